#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "baesim/model.hpp"

using namespace baesim;

namespace {

SystemParams random_params(std::mt19937_64& rng, bool with_phases = false) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_real_distribution<double> sym(-1.0, 1.0);
    SystemParams p;
    p.g = 2.0 * u01(rng);
    p.s_a = 1.5 * sym(rng);
    p.s_b = 1.5 * sym(rng);
    p.kappa_a = 0.2 + 2.0 * u01(rng);
    p.kappa_l = u01(rng) < 0.5 ? 0.0 : u01(rng);
    p.kappa_b = 0.2 + 2.0 * u01(rng);
    p.delta_d = 2.0 * sym(rng);
    p.delta_c = 2.0 * sym(rng);
    if (with_phases) {
        p.pump_phase = two_pi * sym(rng);
        p.sms_phase_a = two_pi * sym(rng);
        p.sms_phase_b = two_pi * sym(rng);
    }
    return p;
}

/// Coefficient matrix of the quadrature Langevin equations written out
/// term by term, the reference the drift construction must reproduce.
Eigen::Matrix4d langevin_reference(const SystemParams& p) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    const double ka = p.kappa_a_total();
    m(XA, XA) = -0.5 * ka;
    m(XA, YA) = -(p.s_a + p.delta_d);
    m(YA, XA) = -(p.s_a - p.delta_d);
    m(YA, YA) = -0.5 * ka;
    m(YA, XB) = -2.0 * p.g;
    m(XB, XB) = -0.5 * p.kappa_b;
    m(XB, YB) = -(p.s_b + p.delta_c);
    m(YB, XA) = -2.0 * p.g;
    m(YB, XB) = -(p.s_b - p.delta_c);
    m(YB, YB) = -0.5 * p.kappa_b;
    return m;
}

}  // namespace

TEST_CASE("drift matrix: ideal BAE couples X_A only into Y_B", "[model]") {
    SystemParams p;
    p.g = 0.7;
    p.kappa_a = 1.3;
    p.kappa_b = 1.3;
    const Eigen::Matrix4d m = drift_matrix(p);
    Eigen::Matrix4d expect = Eigen::Matrix4d::Zero();
    const double k2 = -0.5 * 1.3;
    expect(XA, XA) = expect(YA, YA) = expect(XB, XB) = expect(YB, YB) = k2;
    expect(YA, XB) = -2.0 * 0.7;
    expect(YB, XA) = -2.0 * 0.7;
    REQUIRE(m == expect);
    // the measured quadrature's own row stays decoupled
    REQUIRE(m(XA, YA) == 0.0);
    REQUIRE(m(XA, XB) == 0.0);
    REQUIRE(m(XA, YB) == 0.0);
}

TEST_CASE("drift matrix: empty system is zero", "[model]") {
    REQUIRE(drift_matrix(SystemParams{}) == Eigen::Matrix4d::Zero());
}

TEST_CASE("drift matrix: optimal detunings restore the measured pair", "[model]") {
    SystemParams p;
    p.g = 0.9;
    p.s_a = 0.3;
    p.s_b = 0.45;
    p.delta_d = -p.s_a;
    p.delta_c = p.s_b;
    const Eigen::Matrix4d m = drift_matrix(p);
    // dY_B/dt = -2 g X_A, dX_A/dt = 0
    REQUIRE(m.row(XA).isZero(0.0));
    REQUIRE(m(YB, XA) == -2.0 * p.g);
    REQUIRE(m(YB, XB) == 0.0);
    REQUIRE(m(YB, YB) == 0.0);
    // dX_B/dt = -2 s_b Y_B, dY_A/dt = -2 g X_B - 2 s_a X_A
    REQUIRE(m(XB, YB) == -2.0 * p.s_b);
    REQUIRE(m(YA, XB) == -2.0 * p.g);
    REQUIRE(m(YA, XA) == -2.0 * p.s_a);
}

TEST_CASE("drift matrix equals the Langevin coefficients entry by entry", "[model]") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const SystemParams p = random_params(rng);
        REQUIRE(drift_matrix(p) == langevin_reference(p));
    }
}

TEST_CASE("pump-phase covariance: M(phi) = R(phi/2) M(0) R(phi/2)^T", "[model]") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> phi_dist(-two_pi, two_pi);
    for (int trial = 0; trial < 100; ++trial) {
        SystemParams p = random_params(rng, true);
        p.pump_phase = 0.0;
        const Eigen::Matrix4d m0 = drift_matrix(p);
        SystemParams q = p;
        q.pump_phase = phi_dist(rng);
        const Eigen::Matrix4d r = mode_rotation(0.5 * q.pump_phase, 0.5 * q.pump_phase);
        const Eigen::Matrix4d expect = r * m0 * r.transpose();
        REQUIRE((drift_matrix(q) - expect).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("uniform rate rescaling is exact", "[model]") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const SystemParams p = random_params(rng, true);
        for (double lambda : {0.5, 2.0, 4.0}) {
            SystemParams q = p;
            q.g *= lambda;
            q.s_a *= lambda;
            q.s_b *= lambda;
            q.kappa_a *= lambda;
            q.kappa_l *= lambda;
            q.kappa_b *= lambda;
            q.delta_d *= lambda;
            q.delta_c *= lambda;
            REQUIRE(drift_matrix(q) == (lambda * drift_matrix(p).array()).matrix());
        }
    }
}

TEST_CASE("input matrix: two-port block diagonal", "[model]") {
    SystemParams p;
    p.kappa_a = 0.81;
    p.kappa_b = 1.44;
    const PortConfig ports = PortConfig::standard(p);
    REQUIRE(ports.n_ports() == 2);
    const Eigen::MatrixXd xi = input_matrix(p, ports);
    REQUIRE(xi.rows() == 4);
    REQUIRE(xi.cols() == 4);
    Eigen::Matrix4d expect = Eigen::Matrix4d::Zero();
    expect(XA, 0) = expect(YA, 1) = 0.9;
    expect(XB, 2) = expect(YB, 3) = 1.2;
    REQUIRE(xi == expect);
}

TEST_CASE("input matrix: zero signal coupling gives zero signal columns", "[model]") {
    SystemParams p;
    p.kappa_a = 0.0;
    p.kappa_b = 1.0;
    const Eigen::MatrixXd xi = input_matrix(p, PortConfig::standard(p));
    REQUIRE(xi.col(0).isZero(0.0));
    REQUIRE(xi.col(1).isZero(0.0));
}

TEST_CASE("input matrix: three-bath column norms reproduce the damping", "[model]") {
    SystemParams p;
    p.kappa_a = 0.3;
    p.kappa_l = 0.7;
    p.kappa_b = 2.0;
    const Eigen::MatrixXd xi = input_matrix(p, PortConfig::standard(p));
    REQUIRE(xi.rows() == 4);
    REQUIRE(xi.cols() == 6);
    const Eigen::Matrix4d gram = xi * xi.transpose();
    REQUIRE(gram(XA, XA) == Catch::Approx(p.kappa_a_total()).epsilon(1e-14));
    REQUIRE(gram(YA, YA) == Catch::Approx(p.kappa_a_total()).epsilon(1e-14));
    REQUIRE(gram(XB, XB) == Catch::Approx(p.kappa_b).epsilon(1e-14));
    REQUIRE(gram(YB, YB) == Catch::Approx(p.kappa_b).epsilon(1e-14));
    REQUIRE((gram - gram.diagonal().asDiagonal().toDenseMatrix()).isZero(0.0));
}

TEST_CASE("input matrix: inconsistent ports are a configuration error", "[model]") {
    SystemParams p;
    p.kappa_a = 1.0;
    p.kappa_b = 1.0;
    PortConfig bad = PortConfig::standard(p);
    bad.ports[0].rate = 0.5;
    REQUIRE_THROWS_AS(input_matrix(p, bad), ConfigError);
}

TEST_CASE("invalid rates are rejected", "[model]") {
    SystemParams p;
    p.kappa_a = -1.0;
    REQUIRE_THROWS_AS(drift_matrix(p), ConfigError);
    SystemParams q;
    q.g = -0.1;
    REQUIRE_THROWS_AS(drift_matrix(q), ConfigError);
}
