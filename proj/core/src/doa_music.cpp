#include "mimosa/doa_music.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "mimosa/errors.hpp"

namespace mimosa {

namespace {

double off_diagonal_norm(const Matrix& a) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) acc += std::norm(a(i, j));
    return std::sqrt(acc);
}

}  // namespace

EigenDecomposition hermitian_eig(const CrossSpectrum& s) { return hermitian_eig(s.mat); }

EigenDecomposition hermitian_eig(const Matrix& s, double hermitian_tol) {
    if (s.rows() != s.cols()) throw std::invalid_argument("hermitian_eig: matrix is not square");
    const std::size_t n = s.rows();
    const double scale = std::max(s.max_abs(), std::numeric_limits<double>::min());
    if (s.hermitian_defect() > hermitian_tol * scale)
        throw std::invalid_argument("hermitian_eig: input is not Hermitian within tolerance");

    Matrix a = s;
    Matrix v = Matrix::identity(n);

    const double frob = std::max(a.frobenius_norm(), std::numeric_limits<double>::min());
    const double target = 1e-14 * frob;
    for (int sweep = 0; sweep < 100 && off_diagonal_norm(a) > target; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= 1e-300) continue;

                // Unitary 2x2 rotation that annihilates the (p,q) entry.
                const Complex phase = apq / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double sr = t * c;

                // Columns: right-multiplication by the rotation.
                for (std::size_t r = 0; r < n; ++r) {
                    const Complex arp = a(r, p);
                    const Complex arq = a(r, q);
                    a(r, p) = c * arp - sr * std::conj(phase) * arq;
                    a(r, q) = sr * phase * arp + c * arq;
                }
                // Rows: left-multiplication by the adjoint rotation.
                for (std::size_t col = 0; col < n; ++col) {
                    const Complex apc = a(p, col);
                    const Complex aqc = a(q, col);
                    a(p, col) = c * apc - sr * phase * aqc;
                    a(q, col) = sr * std::conj(phase) * apc + c * aqc;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t r = 0; r < n; ++r) {
                    const Complex vrp = v(r, p);
                    const Complex vrq = v(r, q);
                    v(r, p) = c * vrp - sr * std::conj(phase) * vrq;
                    v(r, q) = sr * phase * vrp + c * vrq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> diag(n);
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        diag[i] = a(i, i).real();
        trace += diag[i];
    }
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return diag[x] > diag[y]; });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    const double clip = 1e-10 * std::abs(trace);
    for (std::size_t k = 0; k < n; ++k) {
        double val = diag[order[k]];
        if (val < 0.0 && val >= -clip) val = 0.0;
        out.values[k] = val;
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
    }
    return out;
}

Matrix noise_subspace(const EigenDecomposition& eig, std::size_t signal_count) {
    const std::size_t dim = eig.vectors.rows();
    if (signal_count == 0 || signal_count >= dim)
        throw std::invalid_argument("noise_subspace: signal count must lie in (0, dim)");
    return eig.vectors.columns(signal_count, dim - signal_count);
}

std::size_t estimate_signal_count(const EigenDecomposition& eig) {
    const std::size_t n = eig.values.size();
    if (n < 2) throw std::invalid_argument("estimate_signal_count: need at least two eigenvalues");
    if (eig.values[0] <= 0.0) return 1;
    // Eigenvalues at the rounding floor would make the ratio meaningless, so
    // everything below eps * lambda_1 counts as the floor itself.
    const double floor = eig.values[0] * std::numeric_limits<double>::epsilon();
    std::size_t best = 1;
    double best_gap = -1.0;
    for (std::size_t k = 1; k < n; ++k) {
        const double hi = std::max(eig.values[k - 1], floor);
        const double lo = std::max(eig.values[k], floor);
        const double gap = hi / lo;
        if (gap > best_gap) {
            best_gap = gap;
            best = k;
        }
    }
    return best;
}

std::size_t count_dominant(const EigenDecomposition& eig, double rel_threshold) {
    if (eig.values.empty() || eig.values[0] <= 0.0) return 0;
    std::size_t count = 0;
    for (double v : eig.values)
        if (v / eig.values[0] > rel_threshold) ++count;
    return count;
}

MusicSpectrum music_spectrum(const Matrix& noise_basis, const SphereGrid& grid, int mic_order,
                             double value_cap) {
    if (static_cast<int>(noise_basis.rows()) != sh_count(mic_order))
        throw std::invalid_argument("music_spectrum: basis rows do not match the array order");
    MusicSpectrum out;
    out.grid = grid;
    out.values.resize(grid.points.size());
    const double floor = 1.0 / value_cap;
    CVector steer(noise_basis.rows());
    for (std::size_t g = 0; g < grid.points.size(); ++g) {
        const SteeringVector y = steering_vector(grid.points[g], mic_order);
        for (std::size_t i = 0; i < steer.size(); ++i) steer[i] = std::conj(y.coeffs[i]);
        const CVector proj = noise_basis.apply_adjoint(steer);
        const double denom = std::max(norm2(proj), floor);
        out.values[g] = 1.0 / denom;
    }
    return out;
}

DoaEstimate find_peaks(const MusicSpectrum& spec, std::size_t count, double min_separation_deg) {
    const auto& grid = spec.grid;
    if (grid.n_theta == 0 || grid.n_phi == 0 || grid.points.size() != grid.n_theta * grid.n_phi)
        throw std::invalid_argument("find_peaks: requires a full equiangular grid");
    if (spec.values.size() != grid.points.size())
        throw std::invalid_argument("find_peaks: value count does not match the grid");

    const auto at = [&](std::size_t i, std::size_t j) { return spec.values[i * grid.n_phi + j]; };

    std::vector<std::size_t> maxima;
    for (std::size_t i = 0; i < grid.n_theta; ++i) {
        for (std::size_t j = 0; j < grid.n_phi; ++j) {
            const double v = at(i, j);
            bool is_max = true;
            for (int di = -1; di <= 1 && is_max; ++di) {
                const auto ii = static_cast<std::ptrdiff_t>(i) + di;
                if (ii < 0 || ii >= static_cast<std::ptrdiff_t>(grid.n_theta)) continue;
                for (int dj = -1; dj <= 1; ++dj) {
                    if (di == 0 && dj == 0) continue;
                    const std::size_t jj = static_cast<std::size_t>(
                        (static_cast<std::ptrdiff_t>(j) + dj + static_cast<std::ptrdiff_t>(grid.n_phi)) %
                        static_cast<std::ptrdiff_t>(grid.n_phi));
                    if (at(static_cast<std::size_t>(ii), jj) > v) {
                        is_max = false;
                        break;
                    }
                }
            }
            if (is_max) maxima.push_back(i * grid.n_phi + j);
        }
    }

    std::sort(maxima.begin(), maxima.end(), [&](std::size_t x, std::size_t y) {
        if (spec.values[x] != spec.values[y]) return spec.values[x] > spec.values[y];
        return x < y;
    });

    DoaEstimate est;
    for (std::size_t idx : maxima) {
        if (est.directions.size() == count) break;
        const SphericalAngle dir = grid.points[idx];
        bool separated = true;
        for (const auto& chosen : est.directions) {
            if (great_circle_deg(dir, chosen) < min_separation_deg) {
                separated = false;
                break;
            }
        }
        if (!separated) continue;
        est.directions.push_back(dir);
        est.peak_values.push_back(spec.values[idx]);
    }

    if (est.directions.size() < count)
        throw PeakDeficitError("find_peaks: found " + std::to_string(est.directions.size()) +
                                   " separable maxima, needed " + std::to_string(count),
                               est.directions.size(), count);
    return est;
}

double great_circle_deg(const SphericalAngle& a, const SphericalAngle& b) {
    const auto u = a.to_unit_vector();
    const auto v = b.to_unit_vector();
    double dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
    dot = std::clamp(dot, -1.0, 1.0);
    return std::acos(dot) * 180.0 / std::numbers::pi;
}

}  // namespace mimosa
