#include "mimosa/smoothing.hpp"

#include <cmath>
#include <stdexcept>

#include "mimosa/sh_math.hpp"

namespace mimosa {

CVector modal_vector(const Matrix& plane_wave_transfer, int n, int m) {
    if (n < 0 || std::abs(m) > n) throw std::out_of_range("modal_vector: require |m| <= n");
    const int idx = sh_index(n, m);
    if (idx >= static_cast<int>(plane_wave_transfer.cols()))
        throw std::out_of_range("modal_vector: channel beyond loudspeaker order");
    return plane_wave_transfer.column(static_cast<std::size_t>(idx));
}

CrossSpectrum frequency_smooth(const std::vector<CVector>& vector_per_bin) {
    if (vector_per_bin.empty()) throw std::invalid_argument("frequency_smooth: no bins");
    const std::size_t dim = vector_per_bin.front().size();
    Matrix acc(dim, dim);
    for (const auto& a : vector_per_bin) {
        if (a.size() != dim) throw std::invalid_argument("frequency_smooth: inconsistent vector sizes");
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) acc(i, j) += a[i] * std::conj(a[j]);
    }
    acc *= Complex{1.0 / static_cast<double>(vector_per_bin.size()), 0.0};

    CrossSpectrum s;
    s.mat = std::move(acc);
    s.meta.estimator = "frequency";
    s.meta.average_count = vector_per_bin.size();
    return s;
}

CrossSpectrum modal_smooth(const Matrix& plane_wave_transfer, int ls_order) {
    if (static_cast<int>(plane_wave_transfer.cols()) != sh_count(ls_order))
        throw std::invalid_argument("modal_smooth: column count does not match loudspeaker order");
    const double channels = static_cast<double>(sh_count(ls_order));
    Matrix s = plane_wave_transfer * plane_wave_transfer.adjoint();
    s *= Complex{1.0 / channels, 0.0};

    CrossSpectrum out;
    out.mat = std::move(s);
    out.meta.estimator = "modal";
    out.meta.average_count = static_cast<std::size_t>(channels);
    return out;
}

CrossSpectrum modal_smooth_channel_sum(const Matrix& plane_wave_transfer, int ls_order) {
    if (static_cast<int>(plane_wave_transfer.cols()) != sh_count(ls_order))
        throw std::invalid_argument("modal_smooth_channel_sum: column count does not match loudspeaker order");
    const std::size_t dim = plane_wave_transfer.rows();
    Matrix acc(dim, dim);
    for (int n = 0; n <= ls_order; ++n) {
        for (int m = -n; m <= n; ++m) {
            const CVector a = modal_vector(plane_wave_transfer, n, m);
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = 0; j < dim; ++j) acc(i, j) += a[i] * std::conj(a[j]);
        }
    }
    acc *= Complex{1.0 / static_cast<double>(sh_count(ls_order)), 0.0};

    CrossSpectrum out;
    out.mat = std::move(acc);
    out.meta.estimator = "modal";
    out.meta.average_count = static_cast<std::size_t>(sh_count(ls_order));
    return out;
}

Matrix truncate_loudspeaker_order(const Matrix& plane_wave_transfer, int ls_order, int new_order) {
    if (static_cast<int>(plane_wave_transfer.cols()) != sh_count(ls_order))
        throw std::invalid_argument("truncate_loudspeaker_order: column count does not match loudspeaker order");
    if (new_order < 0 || new_order > ls_order)
        throw std::invalid_argument("truncate_loudspeaker_order: new order must lie in [0, order]");
    return plane_wave_transfer.columns(0, static_cast<std::size_t>(sh_count(new_order)));
}

CrossSpectrum combined_smooth(const std::vector<Matrix>& transfer_per_bin, int ls_order) {
    if (transfer_per_bin.empty()) throw std::invalid_argument("combined_smooth: no bins");
    CrossSpectrum acc = modal_smooth(transfer_per_bin.front(), ls_order);
    for (std::size_t q = 1; q < transfer_per_bin.size(); ++q) {
        if (!transfer_per_bin[q].same_shape(transfer_per_bin.front()))
            throw std::invalid_argument("combined_smooth: inconsistent matrix shapes");
        acc.mat += modal_smooth(transfer_per_bin[q], ls_order).mat;
    }
    acc.mat *= Complex{1.0 / static_cast<double>(transfer_per_bin.size()), 0.0};
    acc.meta.estimator = "combined";
    acc.meta.average_count = transfer_per_bin.size() * static_cast<std::size_t>(sh_count(ls_order));
    return acc;
}

}  // namespace mimosa
