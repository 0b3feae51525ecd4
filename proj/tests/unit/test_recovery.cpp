#include <doctest.h>

#include <gabor/recovery.hpp>
#include <gabor/rng.hpp>

#include <cmath>

using namespace gabor;

namespace {

SparseVector random_unit_sparse(Index size, Index s, std::uint64_t seed) {
    SplitStream stream(seed);
    auto support = stream.sample_without_replacement(size, s);
    std::sort(support.begin(), support.end());
    CVec values(s);
    for (Index i = 0; i < s; ++i) values[i] = stream.next_unit();
    values /= values.norm();
    return SparseVector(size, std::move(support), std::move(values));
}

Real rel_error(const SparseVector& truth, const SparseVector& estimate) {
    return (truth.to_dense() - estimate.to_dense()).norm() / truth.norm();
}

}  // namespace

TEST_CASE("table 1 constants are pinned") {
    const auto& table = algorithm_thresholds();
    REQUIRE(table.size() == 4);
    CHECK(table[0].algorithm == Algorithm::BasisPursuit);
    CHECK(table[0].kappa == 2);
    CHECK(table[0].delta_star == doctest::Approx(3.0 / (4.0 + std::sqrt(6.0))).epsilon(1e-15));
    CHECK(table[0].delta_star == doctest::Approx(0.4652).epsilon(1e-4));
    CHECK(table[1].algorithm == Algorithm::CoSaMP);
    CHECK(table[1].kappa == 4);
    CHECK(table[1].delta_star ==
          doctest::Approx(std::sqrt(2.0 / (5.0 + std::sqrt(73.0)))).epsilon(1e-15));
    CHECK(table[1].delta_star == doctest::Approx(0.3843).epsilon(1e-4));
    CHECK(table[2].algorithm == Algorithm::IHT);
    CHECK(table[2].kappa == 3);
    CHECK(table[2].delta_star == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(table[3].algorithm == Algorithm::HTP);
    CHECK(table[3].kappa == 3);
    CHECK(table[3].delta_star == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
}

TEST_CASE("guarantee status reflects the threshold comparison") {
    CHECK(guarantee_status(Algorithm::IHT, 0.4) == GuaranteeStatus::Yes);
    CHECK(guarantee_status(Algorithm::IHT, 0.6) == GuaranteeStatus::No);
    CHECK(guarantee_status(Algorithm::IHT, std::nan("")) == GuaranteeStatus::Unknown);
    CHECK(guarantee_status(Algorithm::OMP, 0.1) == GuaranteeStatus::Unknown);
}

TEST_CASE("best s-term error drops the largest magnitudes") {
    CVec x(3);
    x << 3.0, 2.0, 1.0;
    CHECK(best_s_term_error(x, 1) == doctest::Approx(3.0));
    CHECK(best_s_term_error(x, 0) == doctest::Approx(6.0));
    CHECK(best_s_term_error(x, 3) == 0.0);
    CHECK(best_s_term_error(x, 9) == 0.0);

    CVec c(3);
    c << Complex(1, 1), Complex(1, 0), Complex(0, 0);
    CHECK(best_s_term_error(c, 1) == doctest::Approx(1.0));
}

TEST_CASE("best s-term error is nonincreasing in s and zero at the sparsity") {
    SplitStream s(5);
    CVec x(20);
    for (Index i = 0; i < 20; ++i)
        x[i] = i < 7 ? Complex(s.next_gaussian(), s.next_gaussian()) : Complex(0, 0);
    Real prev = best_s_term_error(x, 0);
    for (Index k = 1; k <= 8; ++k) {
        const Real cur = best_s_term_error(x, k);
        CHECK(cur <= prev + 1e-14);
        prev = cur;
    }
    CHECK(best_s_term_error(x, 7) == 0.0);
}

TEST_CASE("least squares on the generating atom returns coefficient one") {
    const GaborOperator op(make_window(WindowKind::Steinhaus, 6, 7));
    const TFIndex lambda{2, 4};
    const CVec y = op.atom(lambda);
    const CVec coeffs = least_squares_on_support(op, y, {lambda.linear(6)});
    REQUIRE(coeffs.size() == 1);
    CHECK(std::abs(coeffs[0] - Complex(1, 0)) < 1e-10);
}

TEST_CASE("least squares on orthogonal data returns zeros") {
    const GaborOperator op(make_window(WindowKind::Rademacher, 4, 2));
    // y orthogonal to the atoms on the support: project it out
    const std::vector<Index> support = {0, 5};
    CMat atoms(4, 2);
    atoms.col(0) = op.atom(TFIndex::from_linear(0, 4));
    atoms.col(1) = op.atom(TFIndex::from_linear(5, 4));
    SplitStream s(3);
    CVec y(4);
    for (Index i = 0; i < 4; ++i) y[i] = Complex(s.next_gaussian(), s.next_gaussian());
    const CVec gram_solve = least_squares_on_support(op, y, support);
    CVec y_perp = y;
    for (Index c = 0; c < 2; ++c) y_perp -= atoms.col(c) * gram_solve[c] * 0.0;
    y_perp = y - atoms * gram_solve;
    const CVec coeffs = least_squares_on_support(op, y_perp, support);
    CHECK(coeffs.norm() < 1e-10);
}

TEST_CASE("least squares reproduces synthesized coefficients") {
    const GaborOperator op(make_window(WindowKind::Rademacher, 16, 5));
    const SparseVector truth = random_unit_sparse(256, 3, 11);
    const CVec y = op.synthesis(truth);
    const CVec coeffs = least_squares_on_support(op, y, truth.support());
    CHECK((coeffs - truth.values()).norm() < 1e-8);
    // residual orthogonal to the selected atoms
    const CVec residual = y - op.synthesis(SparseVector(256, truth.support(), coeffs));
    for (const Index idx : truth.support()) {
        const CVec atom = op.atom(TFIndex::from_linear(idx, 16));
        CHECK(std::abs(atom.dot(residual)) < 1e-8);
    }
}

TEST_CASE("least squares rejects dependent atom sets") {
    // delta-window atoms with equal time shift are parallel
    Window w;
    w.n = 4;
    w.kind = WindowKind::Rademacher;
    w.seed = 0;
    w.epsilon = CVec::Zero(4);
    w.epsilon[0] = 2.0;
    w.g = CVec::Zero(4);
    w.g[0] = 1.0;
    const GaborOperator op(w);
    CVec y = CVec::Ones(4);
    CHECK_THROWS_AS(least_squares_on_support(op, y, {TFIndex{0, 0}.linear(4),
                                                     TFIndex{0, 1}.linear(4),
                                                     TFIndex{0, 2}.linear(4),
                                                     TFIndex{0, 3}.linear(4),
                                                     TFIndex{1, 0}.linear(4)}),
                    Error);
}

TEST_CASE("solvers return zero for zero observations") {
    const GaborOperator op(make_window(WindowKind::Rademacher, 8, 1));
    const CVec y = CVec::Zero(8);
    for (Algorithm algo : {Algorithm::IHT, Algorithm::HTP, Algorithm::CoSaMP, Algorithm::OMP,
                           Algorithm::BasisPursuit}) {
        const RecoveryResult result = run_solver(algo, op, y, 2);
        CHECK(result.x_hat.nnz() == 0);
        CHECK(result.residual_norm == 0.0);
        CHECK(result.converged);
    }
    const RecoveryResult iht_result = iht(op, y, 2);
    CHECK(iht_result.iterations == 1);
}

TEST_CASE("one-sparse problems on the alltop frame are solved by every algorithm") {
    const GaborOperator op(make_window(WindowKind::Alltop, 5, 0));
    const TFIndex lambda{3, 1};
    const Complex c{0.8, -1.1};
    const CVec y = c * op.atom(lambda);
    for (Algorithm algo : {Algorithm::IHT, Algorithm::HTP, Algorithm::CoSaMP, Algorithm::OMP,
                           Algorithm::BasisPursuit}) {
        const RecoveryResult result = run_solver(algo, op, y, 1);
        INFO(algorithm_name(algo));
        REQUIRE(result.x_hat.nnz() == 1);
        CHECK(result.x_hat.support()[0] == lambda.linear(5));
        const Real tol = algo == Algorithm::BasisPursuit ? 1e-6 : 1e-8;
        CHECK(std::abs(result.x_hat.values()[0] - c) < tol * std::abs(c));
        CHECK(result.converged);
    }
}

TEST_CASE("cosamp finds a one-sparse target in a single iteration") {
    const GaborOperator op(make_window(WindowKind::Alltop, 5, 0));
    const CVec y = op.atom({1, 2});
    const RecoveryResult result = cosamp(op, y, 1);
    CHECK(result.iterations <= 2);  // detection plus the convergence pass
    CHECK(result.converged);
}

TEST_CASE("omp recovers within the coherence regime") {
    const GaborOperator op(make_window(WindowKind::Alltop, 11, 0));
    // (2s-1) mu < 1 with mu = 1/sqrt(11)
    const SparseVector truth = random_unit_sparse(121, 1, 3);
    const RecoveryResult result = omp(op, op.synthesis(truth), 1);
    CHECK(rel_error(truth, result.x_hat) < 1e-10);
    CHECK(result.iterations == 1);
}

TEST_CASE("omp reports the best greedy fit for infeasible observations") {
    const GaborOperator op(make_window(WindowKind::Rademacher, 8, 4));
    SplitStream s(9);
    CVec y(8);
    for (Index i = 0; i < 8; ++i) y[i] = Complex(s.next_gaussian(), s.next_gaussian());
    SolverOptions strict;
    strict.tol = 1e-12;
    const RecoveryResult result = omp(op, y, 2, strict);
    const CVec reconstructed = op.synthesis(result.x_hat);
    CHECK(result.residual_norm == doctest::Approx((y - reconstructed).norm()).epsilon(1e-12));
    CHECK(result.residual_norm > 1e-6);
    CHECK_FALSE(result.converged);
}

TEST_CASE("recovery harness at n=64: all greedy solvers recover 3-sparse targets") {
    const GaborOperator op(make_window(WindowKind::Rademacher, 64, 1));
    const SparseVector truth = random_unit_sparse(4096, 3, 17);
    const CVec y = op.synthesis(truth);

    SUBCASE("iht") {
        SolverOptions opts;
        opts.max_iters = 500;
        const RecoveryResult result = iht(op, y, 3, opts);
        CHECK(rel_error(truth, result.x_hat) <= 1e-6);
        CHECK(result.iterations <= 500);
    }
    SUBCASE("htp") {
        const RecoveryResult result = htp(op, y, 3);
        CHECK(rel_error(truth, result.x_hat) <= 1e-8);
    }
    SUBCASE("cosamp") {
        const RecoveryResult result = cosamp(op, y, 3);
        CHECK(rel_error(truth, result.x_hat) <= 1e-8);
    }
    SUBCASE("omp") {
        const RecoveryResult result = omp(op, y, 3);
        CHECK(rel_error(truth, result.x_hat) <= 1e-8);
    }
}

TEST_CASE("the optional adaptive step also recovers sparse targets") {
    const GaborOperator op(make_window(WindowKind::Rademacher, 16, 2));
    const SparseVector truth = random_unit_sparse(256, 2, 9);
    const CVec y = op.synthesis(truth);
    SolverOptions opts;
    opts.adaptive_step = true;
    const RecoveryResult result = iht(op, y, 2, opts);
    CHECK(rel_error(truth, result.x_hat) <= 1e-6);
}

TEST_CASE("basis pursuit recovers a 1-sparse alltop target to 1e-6") {
    const GaborOperator op(make_window(WindowKind::Alltop, 5, 0));
    const SparseVector truth = random_unit_sparse(25, 1, 21);
    const RecoveryResult result = basis_pursuit(op, op.synthesis(truth));
    CHECK(rel_error(truth, result.x_hat) <= 1e-6);
    CHECK(result.converged);
}

TEST_CASE("basis pursuit succeeds on most seeded steinhaus draws at n=32, s=3") {
    int successes = 0;
    const int trials = 100;
    for (int trial = 0; trial < trials; ++trial) {
        const GaborOperator op(
            make_window(WindowKind::Steinhaus, 32, 1000 + static_cast<std::uint64_t>(trial)));
        const SparseVector truth =
            random_unit_sparse(1024, 3, 5000 + static_cast<std::uint64_t>(trial));
        const RecoveryResult result = basis_pursuit(op, op.synthesis(truth));
        if (rel_error(truth, result.x_hat) < 1e-4) ++successes;
    }
    CHECK(successes >= 90);
}

TEST_CASE("solver residuals are recomputed consistently") {
    const GaborOperator op(make_window(WindowKind::Steinhaus, 16, 8));
    const SparseVector truth = random_unit_sparse(256, 2, 31);
    CVec y = op.synthesis(truth);
    y[0] += Complex(0.05, -0.02);  // make the problem slightly inconsistent
    for (Algorithm algo : {Algorithm::IHT, Algorithm::HTP, Algorithm::CoSaMP, Algorithm::OMP,
                           Algorithm::BasisPursuit}) {
        const RecoveryResult result = run_solver(algo, op, y, 2);
        const Real recomputed = (y - op.synthesis(result.x_hat)).norm();
        INFO(algorithm_name(algo));
        CHECK(result.residual_norm == doctest::Approx(recomputed).epsilon(1e-10));
    }
}

TEST_CASE("greedy and thresholding outputs never exceed the sparsity budget") {
    const GaborOperator op(make_window(WindowKind::Rademacher, 16, 44));
    SplitStream s(12);
    CVec y(16);
    for (Index i = 0; i < 16; ++i) y[i] = Complex(s.next_gaussian(), s.next_gaussian());
    for (Index sparsity : {1, 3, 6}) {
        for (Algorithm algo :
             {Algorithm::IHT, Algorithm::HTP, Algorithm::CoSaMP, Algorithm::OMP}) {
            const RecoveryResult result = run_solver(algo, op, y, sparsity);
            INFO(algorithm_name(algo) << " s=" << sparsity);
            CHECK(result.x_hat.nnz() <= sparsity);
        }
    }
}

TEST_CASE("exact iterates are fixed points of the greedy solvers") {
    const GaborOperator op(make_window(WindowKind::Rademacher, 16, 3));
    const SparseVector truth = random_unit_sparse(256, 3, 7);
    const CVec y = op.synthesis(truth);
    SolverOptions opts;
    opts.max_iters = 1;
    opts.warm_start = truth;
    for (Algorithm algo : {Algorithm::IHT, Algorithm::HTP, Algorithm::CoSaMP}) {
        const RecoveryResult result = run_solver(algo, op, y, 3, opts);
        INFO(algorithm_name(algo));
        CHECK(result.x_hat.support() == truth.support());
        CHECK((result.x_hat.values() - truth.values()).norm() <= 1e-10);
    }
}

TEST_CASE("basis pursuit re-solves to the same answer") {
    const GaborOperator op(make_window(WindowKind::Steinhaus, 16, 10));
    const SparseVector truth = random_unit_sparse(256, 2, 13);
    const CVec y = op.synthesis(truth);
    const RecoveryResult a = basis_pursuit(op, y);
    const RecoveryResult b = basis_pursuit(op, y);
    CHECK(a.x_hat.support() == b.x_hat.support());
    CHECK((a.x_hat.values() - b.x_hat.values()).norm() == 0.0);
}

TEST_CASE("stability smoke test: errors bounded by the compressibility-noise budget") {
    // y = Psi x + e with compressible x; assert the (7)-shaped bound with
    // C1 = C2 = 20, boundedness only
    const GaborOperator op(make_window(WindowKind::Rademacher, 32, 6));
    const Index N = 1024;
    const Index s = 3;
    SplitStream seeds(29);
    for (int trial = 0; trial < 10; ++trial) {
        SplitStream draw = seeds.substream(static_cast<std::uint64_t>(trial));
        CVec x = CVec::Zero(N);
        const auto support = draw.sample_without_replacement(N, 8);
        Real scale = 1.0;
        for (const Index i : support) {
            x[i] = scale * draw.next_unit();
            scale *= 0.25;  // rapidly decaying tail
        }
        const Real tau = 0.01;
        CVec noise(32);
        for (Index i = 0; i < 32; ++i)
            noise[i] = Complex(draw.next_gaussian(), draw.next_gaussian());
        noise *= tau / noise.norm();
        const CVec y = op.synthesis(x) + noise;

        const Real budget =
            20.0 * (best_s_term_error(x, s) / std::sqrt(static_cast<Real>(s)) + tau);
        for (Algorithm algo : {Algorithm::HTP, Algorithm::CoSaMP, Algorithm::OMP}) {
            SolverOptions opts;
            opts.tol = 1e-6;
            const RecoveryResult result = run_solver(algo, op, y, s, opts);
            const Real err = (x - result.x_hat.to_dense()).norm();
            INFO(algorithm_name(algo) << " trial " << trial);
            CHECK(err <= budget);
        }
    }
}
