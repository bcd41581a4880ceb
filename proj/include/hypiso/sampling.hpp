#pragma once

// Seeded random test elements: Haar orthogonal matrices, identity-component
// Lorentz matrices, and classified elements in random position.

#include <cstdint>
#include <optional>
#include <random>

#include "hypiso/classify.hpp"

namespace hypiso {

using Rng = std::mt19937_64;

/// Haar measure on O(n) via QR of a Gaussian matrix.
Matrix random_orthogonal(int n, Rng& rng);
/// Haar measure on SO(n).
Matrix random_special_orthogonal(int n, Rng& rng);
/// exp of a random element of so(n,1); boost part scaled by `boost_scale`.
Matrix random_lorentz(int n, Rng& rng, double boost_scale = 0.3);

struct AngleOptions {
  double pi_probability = 0.2;
  /// Chance of repeating an angle (a non-regular sample) when k >= 2.
  double repeat_probability = 0.0;
  double min_gap = 0.1;
  double margin = 0.15;
};

/// k angles in [margin, pi - margin] with pairwise gap >= min_gap, possibly
/// one pi, sorted descending.
RotationAngles random_angles(int k, Rng& rng, const AngleOptions& opts = {});

/// Largest k admitted by the class in SO_o(n,1).
int max_rotation_count(FixedPointClass cls, int n);

struct LorentzSample {
  Matrix matrix;
  FixedPointClass cls = FixedPointClass::Elliptic;
  RotationAngles angles;
  double stretch = 1.0;
};

/// Standard matrix of the class conjugated by a random SO_o(n,1) element.
/// k < 0 draws k uniformly from the admissible range.
LorentzSample random_isometry(FixedPointClass cls, int n, int k, Rng& rng, const AngleOptions& opts = {});

/// Canonical k-rotation of E^n conjugated by a random SO(n) element; with
/// `reflect` an extra -1 direction gives determinant -1.
Matrix random_rotation(int n, int k, Rng& rng, bool reflect = false, const AngleOptions& opts = {});

}  // namespace hypiso
