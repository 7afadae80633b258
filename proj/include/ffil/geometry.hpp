#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "ffil/algebra.hpp"

namespace ffil {

// A point is a coordinate vector; coordinates are field-element indices (or
// ring residues for the Z_q geometry). Sets are ordered and duplicate-free.
using Point = std::vector<Felem>;
using PointSet = std::vector<Point>;

// Diagonal polynomial sum_i a_i x_i^{c_i} with nonzero coefficients,
// 2 <= c_i <= exponent cap (default 16) and gcd(c_i, p) = 1.
class DiagonalForm {
  public:
    static DiagonalForm make(Field field, std::vector<Felem> coeffs,
                             std::vector<std::uint32_t> exps, std::uint32_t exp_cap = 16);

    const Field& field() const { return field_; }
    std::uint32_t d() const { return d_; }
    std::span<const Felem> coeffs() const { return coeffs_; }
    std::span<const std::uint32_t> exps() const { return exps_; }

    // Q(v)
    Felem eval(std::span<const Felem> v) const;
    // Q(x - b)
    Felem eval_diff(std::span<const Felem> x, std::span<const Felem> b) const;

  private:
    DiagonalForm() = default;
    Field field_{Field::make(3, 1)};
    std::uint32_t d_ = 0;
    std::vector<Felem> coeffs_;
    std::vector<std::uint32_t> exps_;
    std::vector<std::vector<Felem>> pow_tab_;  // [i][x] = x^{c_i}
};

struct QSphere {
    Point center;
    Felem radius;
};
using SphereSet = std::vector<QSphere>;

// Sphere over Z_q^d with the fixed form sum (x_i - b_i)^2.
struct RingSphere {
    Point center;
    std::uint32_t radius;
};
using RingSphereSet = std::vector<RingSphere>;

// --- membership and counting ----------------------------------------------

bool on_sphere(const DiagonalForm& Q, const QSphere& s, const Point& x);

// |{(p, s) in P x S : p on s}|, grouped by sphere center so each (point,
// center) pair evaluates Q once.
std::uint64_t count_incidences(const PointSet& P, const SphereSet& S, const DiagonalForm& Q);

bool on_ring_sphere(const Ring& R, const RingSphere& s, const Point& x);
std::uint64_t count_incidences_ring(const PointSet& P, const RingSphereSet& S, const Ring& R);

// N_r = #{ordered (x, y) in E x E : Q(x - y) = r}, with x == y pairs included
// iff include_equal. Returned vector is indexed by r and has length q.
std::vector<std::uint64_t> distance_histogram(const PointSet& E, const DiagonalForm& Q,
                                              bool include_equal);

// {Q(y - p) : y in E}, sorted ascending.
std::vector<Felem> pinned_distance_set(const PointSet& E, const Point& p,
                                       const DiagonalForm& Q);

// |{(x, y) : x != y, Q(x - y) = 0}| over ordered pairs.
std::uint64_t zero_distance_pairs(const PointSet& E, const DiagonalForm& Q);

// --- enumeration, sampling, validation --------------------------------------

std::uint64_t point_code(const Point& pt, std::uint64_t q);
Point point_from_code(std::uint64_t code, std::uint64_t q, std::uint32_t d);

PointSet all_points(std::uint64_t q, std::uint32_t d);
SphereSet all_spheres(const Field& F, std::uint32_t d);
RingSphereSet all_ring_spheres(const Ring& R, std::uint32_t d);

// point set from sorted distinct codes
PointSet points_from_codes(std::span<const std::uint64_t> codes, std::uint64_t q,
                           std::uint32_t d);
// sphere code = radius + q * center_code
SphereSet spheres_from_codes(std::span<const std::uint64_t> codes, std::uint64_t q,
                             std::uint32_t d);
RingSphereSet ring_spheres_from_codes(std::span<const std::uint64_t> codes, std::uint64_t q,
                                      std::uint32_t d);

// Throws invalid_input on arity mismatch, out-of-range coordinates, duplicates.
void validate_point_set(const PointSet& P, std::uint64_t q, std::uint32_t d);
void validate_sphere_set(const SphereSet& S, std::uint64_t q, std::uint32_t d);

// --- CSV ---------------------------------------------------------------------
// Points: one row per point, d comma-separated element fields.
// Spheres: radius first, then the d center coordinates.

void write_points_csv(std::ostream& os, const PointSet& P, const Field& F);
PointSet read_points_csv(std::istream& is, const Field& F, std::uint32_t d);
void write_spheres_csv(std::ostream& os, const SphereSet& S, const Field& F);
SphereSet read_spheres_csv(std::istream& is, const Field& F, std::uint32_t d);

}  // namespace ffil
