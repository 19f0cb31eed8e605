#include "tprs/tensor.hpp"

#include "tprs/linalg.hpp"

#include <catch_amalgamated.hpp>

#include <numeric>
#include <random>

using namespace tprs;

namespace {

DenseTensor random_tensor(Shape shape, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> values(shape_volume(shape));
    for (double& v : values) v = dist(rng);
    return DenseTensor(std::move(shape), std::move(values));
}

// Index-mapping oracle for the unfolding convention: writes each element of
// the tensor into its (row, col) slot by explicit loops over the
// multi-index, with the remaining modes weighted in increasing mode order
// (earliest varying fastest).
Matrix unfold_oracle(const DenseTensor& t, std::size_t mode) {
    const Shape& shape = t.shape();
    const std::size_t rows = shape[mode];
    const std::size_t cols = t.size() / rows;
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    std::vector<std::size_t> idx(shape.size(), 0);
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
        std::size_t col = 0;
        std::size_t weight = 1;
        for (std::size_t k = 0; k < shape.size(); ++k) {
            if (k == mode) continue;
            col += idx[k] * weight;
            weight *= shape[k];
        }
        m(static_cast<Eigen::Index>(idx[mode]), static_cast<Eigen::Index>(col)) = t.value(flat);
        for (std::size_t k = shape.size(); k-- > 0;) {
            if (++idx[k] < shape[k]) break;
            idx[k] = 0;
        }
    }
    return m;
}

// Brute-force mode product: out[..., a, ...] = sum_j m(a, j) * t[..., j, ...].
DenseTensor mode_product_oracle(const DenseTensor& t, const Matrix& m, std::size_t mode) {
    Shape out_shape = t.shape();
    out_shape[mode] = static_cast<std::size_t>(m.rows());
    std::vector<double> out(shape_volume(out_shape), 0.0);
    std::vector<std::size_t> idx(out_shape.size(), 0);
    for (std::size_t flat = 0; flat < out.size(); ++flat) {
        double sum = 0.0;
        std::vector<std::size_t> src = idx;
        for (std::size_t j = 0; j < t.extent(mode); ++j) {
            src[mode] = j;
            sum += m(static_cast<Eigen::Index>(idx[mode]), static_cast<Eigen::Index>(j)) *
                   t.at(src);
        }
        out[flat] = sum;
        for (std::size_t k = out_shape.size(); k-- > 0;) {
            if (++idx[k] < out_shape[k]) break;
            idx[k] = 0;
        }
    }
    return DenseTensor(out_shape, std::move(out));
}

}  // namespace

TEST_CASE("tensor construction validates shape and data length") {
    CHECK_THROWS_AS(DenseTensor(Shape{}), std::invalid_argument);
    CHECK_THROWS_AS(DenseTensor(Shape{2, 0, 3}), std::invalid_argument);
    CHECK_THROWS_AS(DenseTensor(Shape{2, 3}, std::vector<double>(5)), std::invalid_argument);
    const DenseTensor t({2, 3}, {0, 1, 2, 3, 4, 5});
    CHECK(t.size() == 6);
    CHECK(t.order() == 2);
}

TEST_CASE("flat index round-trips with multi-index access") {
    DenseTensor t({2, 3, 4});
    std::vector<double> values(24);
    std::iota(values.begin(), values.end(), 0.0);
    t = DenseTensor({2, 3, 4}, std::move(values));
    // Row-major: last index fastest.
    CHECK(t.at(std::vector<std::size_t>{0, 0, 1}) == 1.0);
    CHECK(t.at(std::vector<std::size_t>{0, 1, 0}) == 4.0);
    CHECK(t.at(std::vector<std::size_t>{1, 0, 0}) == 12.0);
    CHECK(t.at(std::vector<std::size_t>{1, 2, 3}) == 23.0);
    CHECK_THROWS_AS(t.at(std::vector<std::size_t>{2, 0, 0}), std::out_of_range);
}

TEST_CASE("unfold of an order-2 tensor along mode 0 is the matrix itself") {
    const DenseTensor t({2, 3}, {1, 2, 3, 4, 5, 6});
    const Matrix m = unfold(t, 0);
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 3);
    CHECK(m == t.as_matrix());
    // Mode-1 unfolding of a matrix is its transpose.
    CHECK(unfold(t, 1) == t.as_matrix().transpose());
}

TEST_CASE("unfold matches the index-mapping oracle on a 2x3x4 tensor") {
    std::vector<double> values(24);
    std::iota(values.begin(), values.end(), 0.0);
    const DenseTensor t({2, 3, 4}, std::move(values));
    for (std::size_t mode = 0; mode < 3; ++mode) {
        const Matrix got = unfold(t, mode);
        const Matrix want = unfold_oracle(t, mode);
        REQUIRE(got.rows() == want.rows());
        REQUIRE(got.cols() == want.cols());
        CHECK(got == want);
    }
    CHECK(unfold(t, 0).rows() == 2);
    CHECK(unfold(t, 0).cols() == 12);
    // Spot values pinned by the convention: element (1, i1, i2) lands in
    // column i1 + 3 * i2.
    CHECK(unfold(t, 0)(1, 0) == 12.0);
    CHECK(unfold(t, 0)(0, 1) == 4.0);
    CHECK(unfold(t, 0)(0, 2) == 8.0);
    CHECK(unfold(t, 0)(0, 3) == 1.0);
    CHECK_THROWS_AS(unfold(t, 3), std::out_of_range);
}

TEST_CASE("fold inverts unfold for every mode over randomized shapes") {
    const std::vector<Shape> shapes = {
        {1, 1, 1}, {2, 3, 4}, {3, 4, 5}, {4, 4}, {2, 3, 4, 5}, {5, 1, 3}, {1, 6}, {2, 2, 2, 2}};
    std::uint32_t seed = 100;
    for (const Shape& shape : shapes) {
        const DenseTensor t = random_tensor(shape, seed++);
        for (std::size_t mode = 0; mode < shape.size(); ++mode) {
            const DenseTensor back = fold(unfold(t, mode), mode, shape);
            REQUIRE(back.shape() == t.shape());
            CHECK(back.values() == t.values());  // bitwise
        }
    }
}

TEST_CASE("fold rejects mismatched extents and recovers the pinned example") {
    const DenseTensor scalarish = fold(Matrix::Constant(1, 1, 7.5), 0, {1, 1, 1});
    CHECK(scalarish.value(0) == 7.5);

    std::vector<double> values(24);
    std::iota(values.begin(), values.end(), 0.0);
    const DenseTensor t({2, 3, 4}, std::move(values));
    const DenseTensor back = fold(unfold(t, 0), 0, {2, 3, 4});
    CHECK(back.values() == t.values());

    CHECK_THROWS_AS(fold(Matrix::Zero(2, 11), 0, {2, 3, 4}), std::invalid_argument);
    CHECK_THROWS_AS(fold(Matrix::Zero(3, 8), 0, {2, 3, 4}), std::invalid_argument);
}

TEST_CASE("mode product with the identity is the identity map") {
    const DenseTensor t = random_tensor({3, 4, 2}, 7);
    for (std::size_t mode = 0; mode < 3; ++mode) {
        const Matrix eye = Matrix::Identity(static_cast<Eigen::Index>(t.extent(mode)),
                                            static_cast<Eigen::Index>(t.extent(mode)));
        const DenseTensor out = mode_n_product(t, eye, mode);
        CHECK(out.values() == t.values());
    }
}

TEST_CASE("mode product with 2I doubles an all-ones tensor") {
    const DenseTensor ones({2, 2, 2}, std::vector<double>(8, 1.0));
    Matrix twice = Matrix::Zero(2, 2);
    twice(0, 0) = 2.0;
    twice(1, 1) = 2.0;
    const DenseTensor out = mode_n_product(ones, twice, 0);
    for (double v : out.values()) CHECK(v == 2.0);
}

TEST_CASE("mode product matches the brute-force summation oracle") {
    const DenseTensor t = random_tensor({3, 4, 2}, 11);
    std::mt19937 rng(12);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Matrix m(5, 4);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = dist(rng);
    const DenseTensor got = mode_n_product(t, m, 1);
    const DenseTensor want = mode_product_oracle(t, m, 1);
    REQUIRE(got.shape() == Shape{3, 5, 2});
    for (std::size_t i = 0; i < got.size(); ++i)
        CHECK_THAT(got.value(i), Catch::Matchers::WithinAbs(want.value(i), 1e-12));
    CHECK_THROWS_AS(mode_n_product(t, m, 0), std::invalid_argument);
}

TEST_CASE("mode products over distinct modes commute") {
    const DenseTensor t = random_tensor({4, 3, 5}, 21);
    std::mt19937 rng(22);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Matrix a(2, 4), b(6, 5);
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = dist(rng);
    for (Eigen::Index i = 0; i < b.rows(); ++i)
        for (Eigen::Index j = 0; j < b.cols(); ++j) b(i, j) = dist(rng);
    const DenseTensor ab = mode_n_product(mode_n_product(t, a, 0), b, 2);
    const DenseTensor ba = mode_n_product(mode_n_product(t, b, 2), a, 0);
    REQUIRE(ab.shape() == ba.shape());
    double diff = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < ab.size(); ++i) {
        diff += (ab.value(i) - ba.value(i)) * (ab.value(i) - ba.value(i));
        norm += ab.value(i) * ab.value(i);
    }
    CHECK(std::sqrt(diff) <= 1e-12 * std::sqrt(norm));
}

TEST_CASE("frobenius norm matches the sum-of-squares oracle") {
    CHECK(frobenius_norm(DenseTensor({3, 2, 4})) == 0.0);
    const DenseTensor ones({2, 2}, std::vector<double>(4, 1.0));
    CHECK(frobenius_norm(ones) == 2.0);

    const DenseTensor t = random_tensor({4, 4, 4}, 31);
    double sum = 0.0;
    for (double v : t.values()) sum += v * v;
    CHECK_THAT(frobenius_norm(t), Catch::Matchers::WithinRel(std::sqrt(sum), 1e-12));
}

TEST_CASE("squared frobenius norm equals the energy of any unfolding's spectrum") {
    const DenseTensor t = random_tensor({4, 5, 3}, 41);
    const double norm2 = frobenius_norm(t) * frobenius_norm(t);
    for (std::size_t mode = 0; mode < 3; ++mode) {
        const Eigen::VectorXd s = thin_svd(unfold(t, mode)).s;
        double energy = 0.0;
        for (Eigen::Index i = 0; i < s.size(); ++i) energy += s[i] * s[i];
        CHECK_THAT(energy, Catch::Matchers::WithinRel(norm2, 1e-9));
    }
}

TEST_CASE("size-1 extents are legal everywhere") {
    const DenseTensor t = random_tensor({1, 4, 1, 3}, 51);
    for (std::size_t mode = 0; mode < 4; ++mode) {
        const Matrix m = unfold(t, mode);
        const DenseTensor back = fold(m, mode, t.shape());
        CHECK(back.values() == t.values());
    }
    CHECK(unfold(t, 0).rows() == 1);
    CHECK(unfold(t, 0).cols() == 12);
}
