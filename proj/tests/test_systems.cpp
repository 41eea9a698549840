#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <streal/structured_system.hpp>

using namespace streal;

namespace {
StructuredSystem benchmark() { return make_delay_benchmark(12, 1.0, 0.01, 5.0); }

double rel_err(Complex got, Complex want) {
    return std::abs(got - want) / std::abs(want);
}
}  // namespace

TEST_CASE("scalar structured transfer 1/(s+1)") {
    CMat a1 = CMat::Constant(1, 1, 1.0);
    CMat a2 = CMat::Constant(1, 1, -1.0);
    CVec b = CVec::Constant(1, 1.0);
    Eigen::RowVectorXcd c = b.transpose();
    // family {s, -1} with a2 = -1 gives the pencil s + 1
    StructuredSystem sys({a1, a2}, b, c, make_family("standard"), Vec());
    CHECK(std::abs(eval_transfer(sys, Complex(0.0)) - Complex(1.0)) < 1e-15);
    CHECK(std::abs(eval_transfer(sys, Complex(1.0)) - Complex(0.5)) < 1e-15);
}

TEST_CASE("delay benchmark matrix structure") {
    StructuredSystem sys = benchmark();
    CHECK(sys.order() == 12);
    const CMat& e = sys.matrix(0);
    // 10 E = nu I + T: corners nu + 1, interior diagonal nu, off-diagonal 1.
    CHECK(std::abs(10.0 * e(0, 0).real() - 6.0) < 1e-12);
    CHECK(std::abs(10.0 * e(11, 11).real() - 6.0) < 1e-12);
    CHECK(std::abs(10.0 * e(5, 5).real() - 5.0) < 1e-12);
    CHECK(std::abs(10.0 * e(3, 4).real() - 1.0) < 1e-12);
    CHECK(std::abs(e(0, 5)) < 1e-15);
    CHECK(std::abs(sys.b()[0] - Complex(1.0)) < 1e-15);
    CHECK(std::abs(sys.b()[1] - Complex(1.0)) < 1e-15);
    CHECK(std::abs(sys.b()[2]) < 1e-15);
    CHECK(sys.c() == sys.b().transpose());
    CHECK(sys.family().name() == "delay");

    // Strict diagonal dominance of the h_1 matrix for nu > 3.
    for (int i = 0; i < 12; ++i) {
        double off = 0.0;
        for (int j = 0; j < 12; ++j)
            if (i != j) off += std::abs(e(i, j));
        CHECK(std::abs(e(i, i)) > off);
    }
}

TEST_CASE("delay benchmark transfer matches reference values") {
    StructuredSystem sys = benchmark();
    CHECK(rel_err(eval_transfer(sys, Complex(0.0, 6.28e-4)),
                  Complex(2.97e-2, 9.05e-6)) < 1e-2);
    CHECK(rel_err(eval_transfer(sys, Complex(0.0, 2.042035224833366)),
                  Complex(3.26e-2, 4.89e-2)) < 1e-2);
    CHECK(rel_err(eval_transfer(sys, Complex(0.0, 1.000283999582086)),
                  Complex(3.01e-2, 1.58e-2)) < 1e-2);
}

TEST_CASE("vanishing delay coupling at zeta = 1") {
    StructuredSystem sys = make_delay_benchmark(2, 1.0, 1.0, 0.0);
    CHECK(sys.matrix(2).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("conjugate transfer symmetry on random frequencies") {
    StructuredSystem sys = benchmark();
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.05, 10.0);
    for (int trial = 0; trial < 100; ++trial) {
        Complex s(re(rng), im(rng));
        Complex a = eval_transfer(sys, s);
        Complex b = eval_transfer(sys, std::conj(s));
        CHECK(std::abs(std::conj(a) - b) <= 1e-13 * std::abs(a));
    }
}

TEST_CASE("singular pencil raises with the frequency attached") {
    CMat a1 = CMat::Identity(2, 2);
    CMat a2 = CMat::Zero(2, 2);
    CVec b = CVec::Ones(2);
    StructuredSystem sys({a1, a2}, b, b.transpose(), make_family("standard"), Vec());
    // pencil = s I; singular at s = 0
    CHECK_THROWS_AS(eval_transfer(sys, Complex(0.0)), singularity_error);
}

TEST_CASE("construction and benchmark preconditions") {
    CHECK_THROWS_AS(make_delay_benchmark(1, 1.0, 0.01, 5.0), domain_error);
    CHECK_THROWS_AS(make_delay_benchmark(12, -1.0, 0.01, 5.0), domain_error);
    CHECK_THROWS_AS(make_delay_benchmark(12, 1.0, 0.0, 5.0), domain_error);

    CMat a = CMat::Identity(2, 2);
    CVec b = CVec::Ones(2);
    // matrix count must equal family size
    CHECK_THROWS_AS(StructuredSystem({a}, b, b.transpose(), make_family("standard"),
                                     Vec()),
                    domain_error);
    // dimension mismatch
    CVec b3 = CVec::Ones(3);
    CHECK_THROWS_AS(StructuredSystem({a, a}, b3, b3.transpose(),
                                     make_family("standard"), Vec()),
                    domain_error);
}
