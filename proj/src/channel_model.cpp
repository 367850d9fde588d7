// SPDX-License-Identifier: Apache-2.0

#include "rismimo/channel_model.hpp"

#include <cmath>
#include <sstream>

#include "rismimo/matrix_kernel.hpp"

namespace rismimo {

void SystemStatistics::check_shapes() const {
    auto expect = [](const CMat& m, int rows, int cols, const char* what) {
        if (m.rows() != rows || m.cols() != cols) {
            std::ostringstream os;
            os << "SystemStatistics: " << what << " is " << m.rows() << "x" << m.cols()
               << ", expected " << rows << "x" << cols;
            throw NumericalError(os.str());
        }
    };
    expect(link0.r, dims.k, dims.k, "link0.R");
    expect(link0.t, dims.n, dims.n, "link0.T");
    expect(link0.hbar, dims.k, dims.n, "link0.Hbar");
    expect(link1.r, dims.l, dims.l, "link1.R");
    expect(link1.t, dims.n, dims.n, "link1.T");
    expect(link1.hbar, dims.l, dims.n, "link1.Hbar");
    expect(link2.r, dims.k, dims.k, "link2.R");
    expect(link2.t, dims.l, dims.l, "link2.T");
    expect(link2.hbar, dims.k, dims.l, "link2.Hbar");
    if (!(sigma2 > 0.0)) throw NumericalError("SystemStatistics: sigma2 must be positive");
    if (!(power_budget > 0.0)) throw NumericalError("SystemStatistics: power budget must be positive");
}

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double path_loss_linear(double distance_m, double gt_dbi, double gr_dbi) {
    if (distance_m < 1.0) {
        std::ostringstream os;
        os << "path_loss_linear: distance " << distance_m << " m below 1 m reference";
        throw NumericalError(os.str());
    }
    const double gamma_db = gt_dbi + gr_dbi - 37.5 - 22.0 * std::log10(distance_m);
    return std::pow(10.0, gamma_db / 10.0);
}

CMat correlation_from_angles(int size, const ArrayGeometry& geom, int grid_points) {
    if (size < 1) throw NumericalError("correlation_from_angles: size must be >= 1");
    if (!(geom.delta_deg > 0.0)) {
        throw NumericalError("correlation_from_angles: angle spread must be positive");
    }
    if (grid_points < 2) throw NumericalError("correlation_from_angles: grid too small");

    // Entries are a function of the antenna index lag only; compute one row of
    // lags and fill the Hermitian Toeplitz matrix. The quadrature is
    // self-normalizing (divided by the captured Gaussian mass), which keeps
    // the diagonal at exactly one and makes narrow spreads behave.
    const double h = 360.0 / (grid_points - 1);
    const double norm = 1.0 / std::sqrt(2.0 * M_PI * geom.delta_deg * geom.delta_deg);
    CVec lag(size);
    lag.setZero();
    double mass = 0.0;
    for (int g = 0; g < grid_points; ++g) {
        const double phi = -180.0 + g * h;
        const double w = (g == 0 || g == grid_points - 1) ? 0.5 : 1.0;
        const double dev = phi - geom.eta_deg;
        const double gauss = std::exp(-dev * dev / (2.0 * geom.delta_deg * geom.delta_deg));
        const double phase = 2.0 * M_PI * geom.ds * std::sin(M_PI * phi / 180.0);
        const double weight = w * h * norm * gauss;
        mass += weight;
        for (int d = 0; d < size; ++d) {
            lag[d] += weight * std::polar(1.0, phase * d);
        }
    }
    if (mass > 1e-8) {
        lag /= mass;
    } else {
        // The spread is far below the grid resolution: use the vanishing-
        // spread limit, a pure steering lag at the mean angle.
        const double phase = 2.0 * M_PI * geom.ds * std::sin(M_PI * geom.eta_deg / 180.0);
        for (int d = 0; d < size; ++d) lag[d] = std::polar(1.0, phase * d);
    }
    CMat c(size, size);
    for (int m = 0; m < size; ++m) {
        for (int n = 0; n < size; ++n) {
            const int d = m - n;
            c(m, n) = d >= 0 ? lag[d] : std::conj(lag[-d]);
        }
    }
    // Clamp to PSD: the exact integral is nonnegative definite but the
    // quadrature can leave eigenvalues a hair below zero.
    Eigen::SelfAdjointEigenSolver<CMat> eig((c + c.adjoint()) / 2.0);
    RVec lam = eig.eigenvalues().cwiseMax(0.0);
    return eig.eigenvectors() * lam.asDiagonal() * eig.eigenvectors().adjoint();
}

CMat los_allones(int rows, int cols, double target_trace) {
    if (target_trace < 0.0) throw NumericalError("los_allones: negative target trace");
    if (target_trace == 0.0) return CMat::Zero(rows, cols);
    const double c = std::sqrt(target_trace / (static_cast<double>(rows) * cols));
    return CMat::Constant(rows, cols, Complex(c, 0.0));
}

namespace {

double distance(const Position& a, const Position& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

CMat rescale_trace(CMat m, double target) {
    const double tr = m.trace().real();
    if (target == 0.0) return CMat::Zero(m.rows(), m.cols());
    if (!(tr > 0.0)) throw NumericalError("build_statistics: correlation has nonpositive trace");
    return m * (target / tr);
}

}  // namespace

SystemStatistics build_statistics(const ScenarioConfig& cfg) {
    if (cfg.dims.n < 1 || cfg.dims.l < 1 || cfg.dims.k < 1) {
        throw NumericalError("build_statistics: dimensions must be >= 1");
    }
    const double d0 = distance(cfg.bs, cfg.user);
    const double d1 = distance(cfg.bs, cfg.ris);
    const double d2 = distance(cfg.ris, cfg.user);

    SystemStatistics s;
    s.dims = cfg.dims;
    s.sigma2 = dbm_to_watt(cfg.noise_dbm);
    const double p = dbm_to_watt(cfg.p_dbm);
    s.power_budget = cfg.budget_override > 0.0 ? cfg.budget_override : cfg.dims.n * p;

    const int n = cfg.dims.n, l = cfg.dims.l, k = cfg.dims.k;
    const std::array<double, 3> gain{path_loss_linear(d0, cfg.gt_dbi, cfg.gr_dbi),
                                     path_loss_linear(d1, cfg.gt_dbi, cfg.gr_dbi),
                                     path_loss_linear(d2, cfg.gt_dbi, cfg.gr_dbi)};
    const std::array<int, 3> rx_size{k, l, k};
    const std::array<int, 3> tx_size{n, n, l};
    const std::array<double, 3> rx_trace{double(k), double(l), double(k)};
    // tr T_i and tr Hbar_i Hbar_i^H targets matching the scattered-part variances.
    const std::array<double, 3> t_trace{
        double(n) * n * gain[0] / (cfg.kappa[0] + 1.0),
        double(n) * n * gain[1] / (cfg.kappa[1] + 1.0),
        double(l) * l * gain[2] / (cfg.kappa[2] + 1.0)};
    const std::array<double, 3> los_trace{
        cfg.kappa[0] / (cfg.kappa[0] + 1.0) * n * k * gain[0],
        cfg.kappa[1] / (cfg.kappa[1] + 1.0) * n * l * gain[1],
        cfg.kappa[2] / (cfg.kappa[2] + 1.0) * k * l * gain[2]};

    LinkStatistics* links[3] = {&s.link0, &s.link1, &s.link2};
    for (int i = 0; i < 3; ++i) {
        links[i]->kappa = cfg.kappa[i];
        links[i]->gamma = gain[i];
        links[i]->r = rescale_trace(correlation_from_angles(rx_size[i], cfg.rx[i]), rx_trace[i]);
        links[i]->t = rescale_trace(correlation_from_angles(tx_size[i], cfg.tx[i]), t_trace[i]);
        links[i]->hbar = los_allones(rx_size[i], tx_size[i], los_trace[i]);
    }
    if (cfg.debug_trace_scale != 1.0) s.link0.t *= cfg.debug_trace_scale;
    s.check_shapes();
    return s;
}

ChannelSampler::ChannelSampler(const SystemStatistics& stats) : stats_(&stats) {
    stats.check_shapes();
    r0h_ = hermitian_sqrt(stats.link0.r);
    t0h_ = hermitian_sqrt(stats.link0.t);
    r1h_ = hermitian_sqrt(stats.link1.r);
    t1h_ = hermitian_sqrt(stats.link1.t);
    r2h_ = hermitian_sqrt(stats.link2.r);
    t2h_ = hermitian_sqrt(stats.link2.t);
}

namespace {

/// Fill row-major with i.i.d. complex normals of the given std deviation.
CMat gaussian_matrix(RngStream& stream, int rows, int cols, double sdev) {
    CMat x(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) x(i, j) = stream.cnormal() * sdev;
    }
    return x;
}

}  // namespace

void ChannelSampler::sample(RngStream& stream, CMat& h0, CMat& h1, CMat& h2) const {
    const int n = stats_->dims.n, l = stats_->dims.l, k = stats_->dims.k;
    const double sn = 1.0 / std::sqrt(double(n));
    const double sl = 1.0 / std::sqrt(double(l));
    h0 = r0h_ * gaussian_matrix(stream, k, n, sn) * t0h_ + stats_->link0.hbar;
    h1 = r1h_ * gaussian_matrix(stream, l, n, sn) * t1h_ + stats_->link1.hbar;
    h2 = r2h_ * gaussian_matrix(stream, k, l, sl) * t2h_ + stats_->link2.hbar;
}

void sample_channels(const SystemStatistics& stats, RngStream& stream, CMat& h0, CMat& h1,
                     CMat& h2) {
    ChannelSampler(stats).sample(stream, h0, h1, h2);
}

}  // namespace rismimo
