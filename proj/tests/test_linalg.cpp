#include <doctest.h>

#include "phasecut/linalg.hpp"
#include "phasecut/rng.hpp"

using namespace phasecut;

namespace {

Mat random_complex(Rng& rng, Index rows, Index cols) {
  Mat A(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) A(i, j) = rng.complex_normal();
  return A;
}

}  // namespace

TEST_CASE("eig_hermitian on small closed-form matrices") {
  SUBCASE("identity") {
    const EigDecomposition eig = eig_hermitian(Mat::Identity(3, 3));
    for (Index i = 0; i < 3; ++i) CHECK(eig.eigenvalues[i] == doctest::Approx(1.0));
  }
  SUBCASE("diagonal, ascending order") {
    Mat H = Mat::Zero(2, 2);
    H(0, 0) = 2.0;
    H(1, 1) = -1.0;
    const EigDecomposition eig = eig_hermitian(H);
    CHECK(eig.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(eig.eigenvalues[1] == doctest::Approx(2.0));
    CHECK(std::abs(eig.eigenvectors(1, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(eig.eigenvectors(0, 1)) == doctest::Approx(1.0));
  }
  SUBCASE("[[0, i], [-i, 0]] has eigenvalues -1, 1") {
    Mat H(2, 2);
    H << cx(0, 0), cx(0, 1), cx(0, -1), cx(0, 0);
    const EigDecomposition eig = eig_hermitian(H);
    CHECK(eig.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(eig.eigenvalues[1] == doctest::Approx(1.0));
  }
  SUBCASE("orthonormality and reconstruction") {
    Rng rng(11);
    const Mat H = hermitize(random_complex(rng, 8, 8));
    const EigDecomposition eig = eig_hermitian(H);
    const Mat V = eig.eigenvectors;
    CHECK((V.adjoint() * V - Mat::Identity(8, 8)).norm() <= 1e-10);
    const Mat rebuilt = V * eig.eigenvalues.asDiagonal() * V.adjoint();
    CHECK(spectral_norm_hermitian(rebuilt - H) <= 1e-10 * spectral_norm_hermitian(H));
  }
  SUBCASE("non-finite input throws") {
    Mat H = Mat::Zero(2, 2);
    H(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(eig_hermitian(H), std::invalid_argument);
  }
}

TEST_CASE("pseudoinverse") {
  SUBCASE("scalar") {
    Mat A(1, 1);
    A(0, 0) = 2.0;
    CHECK(pseudoinverse(A)(0, 0).real() == doctest::Approx(0.5));
  }
  SUBCASE("isometry: A+ = A*") {
    Rng rng(3);
    Mat Q = random_complex(rng, 6, 3);
    const Eigen::HouseholderQR<Mat> qr(Q);
    const Mat A = Mat(qr.householderQ()).leftCols(3);
    CHECK((pseudoinverse(A) - A.adjoint()).norm() <= 1e-10);
  }
  SUBCASE("Moore-Penrose identities on a random 6x3 matrix") {
    Rng rng(5);
    const Mat A = random_complex(rng, 6, 3);
    const Mat P = pseudoinverse(A);
    const double scale = 1e-8 * A.norm();
    CHECK((A * P * A - A).norm() <= scale);
    CHECK((P * A * P - P).norm() <= scale);
    CHECK(((A * P).adjoint() - A * P).norm() <= scale);
    CHECK(((P * A).adjoint() - P * A).norm() <= scale);
    CHECK((P * A - Mat::Identity(3, 3)).norm() <= 1e-8);
  }
  SUBCASE("zero matrix maps to zero") {
    CHECK(pseudoinverse(Mat::Zero(4, 2)).norm() == 0.0);
  }
  SUBCASE("rank_tol drops small singular directions") {
    Mat A = Mat::Zero(3, 2);
    A(0, 0) = 1.0;
    A(1, 1) = 1e-14;
    const Mat P = pseudoinverse(A, 1e-10);
    CHECK(P(1, 1).real() == doctest::Approx(0.0));
  }
}

TEST_CASE("realify") {
  SUBCASE("identity embeds to identity") {
    CHECK((realify(Mat::Identity(2, 2)) - RealMat::Identity(4, 4)).norm() == 0.0);
  }
  SUBCASE("[[0,i],[-i,0]] block layout") {
    Mat Z(2, 2);
    Z << cx(0, 0), cx(0, 1), cx(0, -1), cx(0, 0);
    RealMat expected(4, 4);
    expected << 0, 0, 0, -1,
                0, 0, 1, 0,
                0, 1, 0, 0,
               -1, 0, 0, 0;
    CHECK((realify(Z) - expected).norm() == 0.0);
  }
  SUBCASE("trace identity") {
    Rng rng(7);
    const Mat Z = hermitize(random_complex(rng, 5, 5));
    const Mat Y = hermitize(random_complex(rng, 5, 5));
    const double lhs = (realify(Z) * realify(Y)).trace();
    const double rhs = 2.0 * (Z * Y).trace().real();
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("psd_project") {
  SUBCASE("PSD input is unchanged") {
    Rng rng(9);
    const Mat G = random_complex(rng, 5, 5);
    const Mat P = hermitize(G * G.adjoint());
    CHECK(spectral_norm_hermitian(psd_project(P) - P) <= 1e-10 * spectral_norm_hermitian(P));
  }
  SUBCASE("diag(1,-2) clips to diag(1,0)") {
    Mat H = Mat::Zero(2, 2);
    H(0, 0) = 1.0;
    H(1, 1) = -2.0;
    const Mat P = psd_project(H);
    CHECK(P(0, 0).real() == doctest::Approx(1.0));
    CHECK(P(1, 1).real() == doctest::Approx(0.0));
  }
  SUBCASE("result is the Frobenius-nearest PSD point") {
    Rng rng(13);
    const Mat H = hermitize(random_complex(rng, 4, 4));
    const Mat P = psd_project(H);
    const double base = (H - P).norm();
    // Any PSD competitor built by scaling the clipped spectrum does worse.
    for (double t : {0.0, 0.25, 0.5, 0.9, 1.1, 1.5}) {
      const Mat Q = psd_project(Mat(t * P));
      CHECK((H - Q).norm() >= base - 1e-10);
    }
    CHECK(lambda_min_hermitian(P) >= -1e-12);
  }
}

TEST_CASE("dist_to_F_oracle") {
  SUBCASE("members of F are at distance zero") {
    Rng rng(17);
    const Mat A = random_complex(rng, 6, 3);
    const Mat X = random_complex(rng, 3, 3);
    const Mat V = hermitize(A * (X * X.adjoint()) * A.adjoint());
    CHECK(dist_to_F_oracle(V, A) <= 1e-8 * spectral_norm_hermitian(V));
  }
  SUBCASE("A = e1, V = I has distance one") {
    Mat A = Mat::Zero(2, 1);
    A(0, 0) = 1.0;
    CHECK(dist_to_F_oracle(Mat::Identity(2, 2), A) == doctest::Approx(1.0));
  }
  SUBCASE("matches Tr(V(I - AA+)) on random instances") {
    Rng rng(19);
    for (int it = 0; it < 20; ++it) {
      const Mat A = random_complex(rng, 7, 3);
      const Mat G = random_complex(rng, 7, 4);
      const Mat V = hermitize(G * G.adjoint());
      const Mat proj = Mat::Identity(7, 7) - A * pseudoinverse(A);
      const double expected = V.cwiseProduct(hermitize(proj).conjugate()).sum().real();
      CHECK(dist_to_F_oracle(V, A) == doctest::Approx(expected).epsilon(1e-8));
    }
  }
  SUBCASE("non-PSD V throws") {
    Mat V = Mat::Identity(3, 3);
    V(2, 2) = -1.0;
    Mat A = Mat::Zero(3, 1);
    A(0, 0) = 1.0;
    CHECK_THROWS_AS(dist_to_F_oracle(V, A), std::domain_error);
  }
}
