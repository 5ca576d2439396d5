#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cvspin/expm.hpp"
#include "cvspin/fock.hpp"

using namespace cvspin;

namespace {

Matrix random_complex(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = cxd(dist(rng), dist(rng));
    return m;
}

}  // namespace

TEST_CASE("mode cutoff validates and reports level capacity") {
    REQUIRE_THROWS_AS(ModeCutoff(0), std::invalid_argument);
    REQUIRE_THROWS_AS(ModeCutoff(-3), std::invalid_argument);
    const ModeCutoff c(9);
    REQUIRE(c.dim() == 10);
    REQUIRE(c.fits_level(4));   // needs |9>
    REQUIRE(!c.fits_level(5));  // would need |11>
}

TEST_CASE("automatic cutoff follows the tail rule with floor 16") {
    REQUIRE(auto_mode_cutoff(0.0) == 16);
    REQUIRE(auto_mode_cutoff(0.1) == 16);
    REQUIRE(auto_mode_cutoff(0.3) == 16);
    REQUIRE(auto_mode_cutoff(0.5) == 17);
    REQUIRE(auto_mode_cutoff(0.8) == 33);
    REQUIRE(auto_mode_cutoff(1.2) == 75);
    REQUIRE(auto_mode_cutoff(1.5) == 138);
    REQUIRE_THROWS_AS(auto_mode_cutoff(-0.1), std::invalid_argument);

    // the dropped tail is indeed below the bound, and the rule is tight
    for (double z : {0.5, 0.8, 1.2, 1.5}) {
        const int n = auto_mode_cutoff(z);
        REQUIRE(std::pow(std::tanh(z), 2 * (n + 1)) < 1e-12);
        if (n > 16) REQUIRE(std::pow(std::tanh(z), 2 * n) >= 1e-12);
    }
}

TEST_CASE("ladder operators carry the standard matrix elements") {
    const ModeCutoff c(5);
    const FockOperator a = annihilation(c);
    REQUIRE(a.mat(2, 3) == cxd(std::sqrt(3.0)));
    REQUIRE(a.mat(0, 1) == cxd(1.0));
    REQUIRE(a.mat(3, 2) == cxd(0.0));

    const FockOperator ad = creation(c);
    REQUIRE((ad.mat - a.mat.adjoint()).cwiseAbs().maxCoeff() == 0.0);

    const FockOperator n_op = number_operator(c);
    REQUIRE(((ad * a).mat - n_op.mat).cwiseAbs().maxCoeff() < 1e-14);

    // truncation shows up only in the top corner of [a, a+]
    const Matrix comm = commutator(a, ad).mat;
    REQUIRE(std::abs(comm(5, 5) - cxd(-5.0)) < 1e-14);
    REQUIRE((comm.topLeftCorner(5, 5) - Matrix::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("operator arithmetic enforces matching shape") {
    const FockOperator a = annihilation(ModeCutoff(4));
    const FockOperator b = annihilation(ModeCutoff(5));
    REQUIRE_THROWS_AS(a + b, std::invalid_argument);
    REQUIRE_THROWS_AS(a * tensor(a, a), std::invalid_argument);
    REQUIRE(a.hermiticity_error() > 0.5);
    REQUIRE((a + a.adjoint()).hermiticity_error() == 0.0);
}

TEST_CASE("tensor product follows the row-major index convention") {
    const ModeCutoff c(2);
    const FockOperator x = number_operator(c);
    const FockOperator y = annihilation(c);
    const FockOperator t = tensor(x, y);
    const int d = c.dim();
    // <(na', nb')| n (x) a |(na, nb)> = na delta(na', na) sqrt(nb) delta(nb', nb - 1)
    REQUIRE(t.mat(2 * d + 1, 2 * d + 2) == cxd(2.0 * std::sqrt(2.0)));
    REQUIRE(t.mat(1 * d + 0, 1 * d + 1) == cxd(1.0));
    REQUIRE(t.mat(0, 1 * d + 1) == cxd(0.0));
    REQUIRE_THROWS_AS(tensor(t, x), std::invalid_argument);
}

TEST_CASE("two-mode states flatten consistently with the tensor convention") {
    const ModeCutoff c(2);
    Matrix amps = Matrix::Zero(3, 3);
    amps(1, 2) = cxd(0.5, -0.25);
    amps(0, 0) = 1.0;
    const TwoModeState state(c, amps);
    REQUIRE(state.amp(1, 2) == cxd(0.5, -0.25));
    const Vector v = state.flatten();
    REQUIRE(v(1 * 3 + 2) == cxd(0.5, -0.25));
    REQUIRE(v(0) == cxd(1.0));
    REQUIRE(state.squared_norm() == Catch::Approx(1.0 + 0.25 * 0.25 + 0.5 * 0.5));

    REQUIRE(vacuum_state(c).squared_norm() == 1.0);
    REQUIRE_THROWS_AS(TwoModeState(c, Matrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("pair expectation matches the explicit Kronecker route") {
    const ModeCutoff c(4);
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Matrix amps(c.dim(), c.dim());
    for (int i = 0; i < c.dim(); ++i)
        for (int j = 0; j < c.dim(); ++j) amps(i, j) = cxd(dist(rng), dist(rng));
    const TwoModeState state(c, amps);

    const Matrix xr = random_complex(c.dim(), 7);
    const Matrix yr = random_complex(c.dim(), 8);
    const FockOperator x(c, Arity::one_mode, xr + xr.adjoint().eval());
    const FockOperator y(c, Arity::one_mode, yr + yr.adjoint().eval());

    const cxd direct = tensor_pair_expectation(state, x, y);
    const cxd via_kron = expectation(state, tensor(x, y));
    REQUIRE(std::abs(direct - via_kron) < 1e-12);
}

TEST_CASE("expectation validates arity and cutoff") {
    const ModeCutoff c(3);
    const TwoModeState state = vacuum_state(c);
    REQUIRE_THROWS_AS(expectation(state, annihilation(c)), std::invalid_argument);
    REQUIRE_THROWS_AS(expectation(state, identity_operator(ModeCutoff(4), Arity::two_mode)),
                      std::invalid_argument);
    REQUIRE(expectation(state, identity_operator(c, Arity::two_mode)) == cxd(1.0));
}

TEST_CASE("matrix exponential reproduces analytic cases") {
    // diagonal
    const ModeCutoff c(4);
    const FockOperator n_op = number_operator(c);
    const FockOperator en = operator_exponential(n_op, cxd(0.0, 0.3));
    for (int n = 0; n <= 4; ++n)
        REQUIRE(std::abs(en.mat(n, n) - std::exp(cxd(0.0, 0.3 * n))) < 1e-14);

    // planar rotation
    Matrix g(2, 2);
    const double angle = 1.234;
    g << 0.0, -angle, angle, 0.0;
    const FockOperator rot = operator_exponential(FockOperator(ModeCutoff(1), Arity::one_mode, g));
    REQUIRE(std::abs(rot.mat(0, 0) - cxd(std::cos(angle))) < 1e-14);
    REQUIRE(std::abs(rot.mat(1, 0) - cxd(std::sin(angle))) < 1e-14);

    // exp(A) exp(-A) = 1 for a random dense matrix
    const Matrix a = random_complex(6, 99);
    const FockOperator fa(ModeCutoff(5), Arity::one_mode, a);
    const Matrix prod = operator_exponential(fa).mat * operator_exponential(fa, -1.0).mat;
    REQUIRE((prod - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("block decomposition agrees with the dense series") {
    // couple even indices with even, odd with odd: two nontrivial components
    const int n = 8;
    Matrix m = Matrix::Zero(n, n);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(-0.8, 0.8);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if ((i + j) % 2 == 0) m(i, j) = cxd(dist(rng), dist(rng));
    const FockOperator op(ModeCutoff(n - 1), Arity::one_mode, m);
    const Matrix via_blocks = operator_exponential(op).mat;
    const Matrix dense = detail::expm_dense(m, 1e-13, 96);
    REQUIRE((via_blocks - dense).cwiseAbs().maxCoeff() < 1e-13);

    const auto components = detail::sparsity_components(m);
    REQUIRE(components.size() == 2);
}

TEST_CASE("matrix exponential reports series non-convergence") {
    const Matrix a = random_complex(5, 3);
    const FockOperator fa(ModeCutoff(4), Arity::one_mode, a);
    REQUIRE_THROWS_AS(operator_exponential(fa, 1.0, 1e-13, 2), std::runtime_error);
}
