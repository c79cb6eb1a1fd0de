#include <doctest.h>

#include <cmath>
#include <random>

#include "skylink/frames.hpp"
#include "support.hpp"

using namespace skylink;

namespace {

EulerAngles random_angles(std::mt19937_64& rng, double pitch_margin = 0.0) {
  return EulerAngles(
      testsup::uniform(rng, -kPi, kPi),
      testsup::uniform(rng, -kPi / 2.0 + pitch_margin, kPi / 2.0 - pitch_margin),
      testsup::uniform(rng, -kPi, kPi));
}

}  // namespace

TEST_CASE("rotation_from_euler: zero rotation is the identity") {
  const auto r = rotation_from_euler(EulerAngles(0.0, 0.0, 0.0));
  CHECK((r.matrix() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("rotation_from_euler: pure yaw pi/2 maps parent x to child -y") {
  const auto r = rotation_from_euler(EulerAngles(0.0, 0.0, kPi / 2.0));
  // Hand-evaluated single-axis Z rotation: mapping into the child frame is
  // Rz(-pi/2) = [[0,1,0],[-1,0,0],[0,0,1]].
  Eigen::Matrix3d expected;
  expected << 0, 1, 0, -1, 0, 0, 0, 0, 1;
  CHECK((r.matrix() - expected).cwiseAbs().maxCoeff() < 1e-15);
  const Position3 mapped = rotate(r, Position3{1.0, 0.0, 0.0});
  CHECK((mapped - Position3{0.0, -1.0, 0.0}).norm() < 1e-15);
}

TEST_CASE("rotation_from_euler: pitch -pi/2 points the child x-axis down") {
  const auto r = rotation_from_euler(EulerAngles(0.0, -kPi / 2.0, 0.0));
  // Child boresight expressed in the parent frame is the first row of the
  // child<-parent matrix transposed, i.e. R^T * ex.
  const Position3 boresight = rotate(inverse(r), Position3{1.0, 0.0, 0.0});
  CHECK((boresight - Position3{0.0, 0.0, -1.0}).norm() < 1e-15);
}

TEST_CASE("constructed rotations satisfy orthonormality and det invariants") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto r = rotation_from_euler(random_angles(rng));
    const Eigen::Matrix3d gram =
        r.matrix().transpose() * r.matrix() - Eigen::Matrix3d::Identity();
    CHECK(gram.cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(std::abs(r.matrix().determinant() - 1.0) <= 1e-12);
    const auto product = r * rotation_from_euler(random_angles(rng));
    CHECK((product.matrix().transpose() * product.matrix() -
           Eigen::Matrix3d::Identity())
              .cwiseAbs()
              .maxCoeff() <= 1e-12);
  }
}

TEST_CASE("inverse is the transpose and undoes the rotation") {
  CHECK((inverse(RotationMatrix3::identity()).matrix() -
         Eigen::Matrix3d::Identity())
            .cwiseAbs()
            .maxCoeff() == 0.0);

  std::mt19937_64 rng(12);
  for (int i = 0; i < 100; ++i) {
    const auto r = rotation_from_euler(random_angles(rng));
    CHECK((inverse(r).matrix() - r.matrix().transpose()).cwiseAbs().maxCoeff() ==
          0.0);
    const Position3 v{testsup::uniform(rng, -10.0, 10.0),
                      testsup::uniform(rng, -10.0, 10.0),
                      testsup::uniform(rng, -10.0, 10.0)};
    CHECK((rotate(inverse(r), rotate(r, v)) - v).norm() <= 1e-12 * v.norm() + 1e-12);
  }
}

TEST_CASE("rotate preserves norms and is linear") {
  CHECK((rotate(RotationMatrix3::identity(), Position3{1.0, 2.0, 3.0}) -
         Position3{1.0, 2.0, 3.0})
            .norm() == 0.0);

  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    const auto r = rotation_from_euler(random_angles(rng));
    const Position3 u{testsup::uniform(rng, -5.0, 5.0),
                      testsup::uniform(rng, -5.0, 5.0),
                      testsup::uniform(rng, -5.0, 5.0)};
    const Position3 v{testsup::uniform(rng, -5.0, 5.0),
                      testsup::uniform(rng, -5.0, 5.0),
                      testsup::uniform(rng, -5.0, 5.0)};
    CHECK(std::abs(rotate(r, u).norm() - u.norm()) <= 1e-12 * (1.0 + u.norm()));
    const double a = testsup::uniform(rng, -2.0, 2.0);
    const double b = testsup::uniform(rng, -2.0, 2.0);
    CHECK((rotate(r, a * u + b * v) - (a * rotate(r, u) + b * rotate(r, v)))
              .norm() <= 1e-12);
  }
}

TEST_CASE("euler round trip away from gimbal lock") {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 200; ++i) {
    const EulerAngles in = random_angles(rng, 1e-3);
    const auto out = euler_from_rotation(rotation_from_euler(in));
    REQUIRE(out.has_value());
    CHECK(std::abs(out->roll - in.roll) <= 1e-9);
    CHECK(std::abs(out->pitch - in.pitch) <= 1e-9);
    CHECK(std::abs(out->yaw - in.yaw) <= 1e-9);
  }
}

TEST_CASE("euler extraction flags gimbal lock instead of guessing") {
  const auto locked =
      euler_from_rotation(rotation_from_euler(EulerAngles(0.3, kPi / 2.0, 1.0)));
  CHECK_FALSE(locked.has_value());
  const auto near_lock = euler_from_rotation(
      rotation_from_euler(EulerAngles(0.3, kPi / 2.0 - 1e-3, 1.0)));
  CHECK(near_lock.has_value());
}

TEST_CASE("EulerAngles wraps into (-pi, pi] and rejects non-finite input") {
  const EulerAngles wrapped(0.0, 0.0, 3.0 * kPi / 2.0);
  CHECK(wrapped.yaw == doctest::Approx(-kPi / 2.0));
  const EulerAngles boundary(0.0, 0.0, -kPi);
  CHECK(boundary.yaw == doctest::Approx(kPi));
  CHECK_THROWS_AS(EulerAngles(std::nan(""), 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(EulerAngles(0.0, INFINITY, 0.0), std::invalid_argument);
}

TEST_CASE("from_matrix rejects matrices violating the invariants") {
  Eigen::Matrix3d scaled = Eigen::Matrix3d::Identity() * 1.001;
  CHECK_THROWS_AS(RotationMatrix3::from_matrix(scaled), std::invalid_argument);
  Eigen::Matrix3d reflection = Eigen::Matrix3d::Identity();
  reflection(2, 2) = -1.0;  // orthonormal but det = -1
  CHECK_THROWS_AS(RotationMatrix3::from_matrix(reflection),
                  std::invalid_argument);
}

TEST_CASE("wrap_angle lands in (-pi, pi]") {
  CHECK(wrap_angle(kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(-kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(kPi + 0.1) == doctest::Approx(-kPi + 0.1));
  CHECK(wrap_angle(3.0 * kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(0.0) == 0.0);
}
