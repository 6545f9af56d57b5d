#include <Eigen/Dense>
#include <catch2/catch_amalgamated.hpp>
#include <matprodlab/family.hpp>
#include <matprodlab/spectral.hpp>

#include <random>

using namespace mpl;

TEST_CASE("singular gap basics", "[spectral]") {
  FloatMatrix r(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = static_cast<double>((i + 1) * (j + 2));
  CHECK(singular_gap(r).ratio == Catch::Approx(0).margin(1e-12));
  FloatMatrix id = FloatMatrix::identity(4);
  CHECK(singular_gap(id).ratio == Catch::Approx(1.0).epsilon(1e-14));
  auto z = singular_gap(FloatMatrix::zeros(3, 3));
  CHECK(z.sigma1 == 0);
  CHECK(z.ratio == 0);
}

TEST_CASE("singular values match eigenvalues of the Gram matrix", "[spectral]") {
  std::mt19937 rng(43);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 500; ++t) {
    FloatMatrix a(3, 3);
    Eigen::Matrix3d e;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) e(i, j) = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = u(rng);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(e.transpose() * e);
    auto s = singular_values(a);
    for (int k = 0; k < 3; ++k)
      CHECK(s[static_cast<std::size_t>(k)] == Catch::Approx(std::sqrt(std::max(0.0, es.eigenvalues()(2 - k)))).margin(1e-9));
  }
}

TEST_CASE("common left eigenvector", "[spectral]") {
  FloatMatrix id = FloatMatrix::identity(3), two = id;
  two *= 2.0;
  CHECK(common_left_eigvec_check({id, two}));
  FloatMatrix shear{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}};
  FloatMatrix rot{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
  CHECK_FALSE(common_left_eigvec_check({shear, rot}));
  std::vector<FloatMatrix> fam;
  for (const auto& g : beta_generators()) fam.push_back(to_float(g));
  CHECK_FALSE(common_left_eigvec_check(fam));
  // Lower-triangular matrices share the left eigenvector U_d*.
  FloatMatrix l1{{1, 0, 0}, {2, 3, 0}, {4, 5, 6}}, l2{{7, 0, 0}, {1, 2, 0}, {3, 3, 9}};
  CHECK(common_left_eigvec_check({l1, l2}));
  // A shared eigenvector across different eigenvalues.
  FloatMatrix p{{2, 0}, {1, 1}}, q{{5, 0}, {0, 3}};
  CHECK(common_left_eigvec_check({p, q}));
}
