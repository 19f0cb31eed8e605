#include "tprs/linalg.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace tprs;

namespace {

Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = dist(rng);
    return m;
}

double orthogonality_residual(const Matrix& q) {
    const Matrix gram = q.transpose() * q;
    return (gram - Matrix::Identity(gram.rows(), gram.cols())).norm();
}

}  // namespace

TEST_CASE("thin_svd of the identity has unit singular values") {
    const SvdTriple svd = thin_svd(Matrix::Identity(3, 3));
    REQUIRE(svd.s.size() == 3);
    for (Eigen::Index i = 0; i < 3; ++i)
        CHECK_THAT(svd.s[i], Catch::Matchers::WithinAbs(1.0, 1e-12));
}

TEST_CASE("thin_svd of diag(3, 1) reconstructs exactly") {
    Matrix a = Matrix::Zero(2, 2);
    a(0, 0) = 3.0;
    a(1, 1) = 1.0;
    const SvdTriple svd = thin_svd(a);
    CHECK_THAT(svd.s[0], Catch::Matchers::WithinAbs(3.0, 1e-12));
    CHECK_THAT(svd.s[1], Catch::Matchers::WithinAbs(1.0, 1e-12));
    const Matrix recon = svd.u * svd.s.asDiagonal() * svd.vt;
    CHECK((recon - a).norm() <= 1e-12);
}

TEST_CASE("thin_svd invariants on a random 6x4 matrix") {
    const Matrix a = random_matrix(6, 4, 17);
    const SvdTriple svd = thin_svd(a);
    REQUIRE(svd.u.rows() == 6);
    REQUIRE(svd.u.cols() == 4);
    REQUIRE(svd.vt.rows() == 4);
    REQUIRE(svd.vt.cols() == 4);

    CHECK(orthogonality_residual(svd.u) < 1e-9);
    CHECK(orthogonality_residual(svd.vt.transpose()) < 1e-9);
    for (Eigen::Index i = 0; i + 1 < svd.s.size(); ++i) CHECK(svd.s[i] >= svd.s[i + 1]);
    CHECK(svd.s[svd.s.size() - 1] >= 0.0);

    const Matrix recon = svd.u * svd.s.asDiagonal() * svd.vt;
    CHECK((recon - a).norm() <= 1e-9 * a.norm());

    // Norm identity oracle: sum of squared singular values equals ||a||_F^2.
    CHECK_THAT(svd.s.squaredNorm(), Catch::Matchers::WithinRel(a.squaredNorm(), 1e-9));
}

TEST_CASE("thin_svd rejects non-finite input") {
    Matrix a = Matrix::Zero(2, 2);
    a(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(thin_svd(a), NumericalError);
    a(0, 1) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(thin_svd(a), NumericalError);
}

TEST_CASE("thin_svd is deterministic and fixes the sign convention") {
    const Matrix a = random_matrix(8, 5, 23);
    const SvdTriple first = thin_svd(a);
    const SvdTriple second = thin_svd(a);
    CHECK(first.u == second.u);
    CHECK(first.s == second.s);
    CHECK(first.vt == second.vt);
    for (Eigen::Index j = 0; j < first.u.cols(); ++j) {
        Eigen::Index pivot = 0;
        double best = std::abs(first.u(0, j));
        for (Eigen::Index i = 1; i < first.u.rows(); ++i)
            if (std::abs(first.u(i, j)) > best) {
                best = std::abs(first.u(i, j));
                pivot = i;
            }
        CHECK(first.u(pivot, j) >= 0.0);
    }
}

TEST_CASE("singular values are invariant under transposition and scale linearly") {
    const Matrix a = random_matrix(7, 4, 29);
    const Eigen::VectorXd s = thin_svd(a).s;
    const Eigen::VectorXd st = thin_svd(Matrix(a.transpose())).s;
    REQUIRE(s.size() == st.size());
    for (Eigen::Index i = 0; i < s.size(); ++i)
        CHECK_THAT(st[i], Catch::Matchers::WithinRel(s[i], 1e-9));

    const Eigen::VectorXd s3 = thin_svd(Matrix(3.0 * a)).s;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        CHECK_THAT(s3[i], Catch::Matchers::WithinRel(3.0 * s[i], 1e-9));
}

TEST_CASE("leading_left_singular_vectors picks basis vectors for diagonal input") {
    const Matrix lead = leading_left_singular_vectors(Matrix::Identity(4, 4), 2);
    REQUIRE(lead.rows() == 4);
    REQUIRE(lead.cols() == 2);
    CHECK((lead.col(0) - Eigen::VectorXd::Unit(4, 0)).norm() < 1e-12);
    CHECK((lead.col(1) - Eigen::VectorXd::Unit(4, 1)).norm() < 1e-12);

    Matrix d = Matrix::Zero(3, 3);
    d(0, 0) = 5.0;
    d(1, 1) = 3.0;
    d(2, 2) = 1.0;
    const Matrix top = leading_left_singular_vectors(d, 1);
    CHECK((top.col(0) - Eigen::VectorXd::Unit(3, 0)).norm() < 1e-12);
}

TEST_CASE("leading subspace projection residual matches the discarded tail") {
    const Matrix a = random_matrix(8, 6, 37);
    const Matrix q = leading_left_singular_vectors(a, 3);
    const double residual = (a - q * (q.transpose() * a)).norm();

    // Oracle: the full spectrum, tail beyond rank 3.
    const Eigen::VectorXd s = thin_svd(a).s;
    double tail = 0.0;
    for (Eigen::Index i = 3; i < s.size(); ++i) tail += s[i] * s[i];
    CHECK_THAT(residual, Catch::Matchers::WithinRel(std::sqrt(tail), 1e-9));

    // Equals the leading columns of the full factorization.
    CHECK((q - thin_svd(a).u.leftCols(3)).norm() == 0.0);

    CHECK_THROWS_AS(leading_left_singular_vectors(a, 0), std::out_of_range);
    CHECK_THROWS_AS(leading_left_singular_vectors(a, 7), std::out_of_range);
}

TEST_CASE("thin_svd handles the kernel switchover size consistently") {
    // Exercise both the small (Jacobi) and large (BDC) paths.
    for (const Eigen::Index n : {4, 96}) {
        const Matrix a = random_matrix(n + 8, n, 41 + static_cast<std::uint32_t>(n));
        const SvdTriple svd = thin_svd(a);
        CHECK(orthogonality_residual(svd.u) < 1e-9);
        const Matrix recon = svd.u * svd.s.asDiagonal() * svd.vt;
        CHECK((recon - a).norm() <= 1e-9 * a.norm());
        CHECK_THAT(svd.s.squaredNorm(), Catch::Matchers::WithinRel(a.squaredNorm(), 1e-9));
    }
}
