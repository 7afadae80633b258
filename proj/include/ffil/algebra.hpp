#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ffil/errors.hpp"

namespace ffil {

// Field elements are canonical indices in [0, q): the element with
// polynomial-basis coordinates (e_0, ..., e_{k-1}) has index sum e_i * p^i.
// For prime fields (k = 1) the index is simply the residue.
using Felem = std::uint32_t;

struct DivisorStats {
    std::uint64_t tau;    // number of divisors of q
    std::uint64_t gamma;  // smallest prime divisor of q
};

// Exact tau(q) and gamma(q) by trial division. q must be odd and >= 3.
DivisorStats divisor_stats(std::uint64_t q);

namespace detail {
struct FieldImpl;
}

// Immutable arithmetic context for F_{p^k}, p an odd prime. The modulus is the
// lexicographically smallest monic irreducible of degree k over Z_p (comparing
// coefficient sequences low-to-high), so every derived quantity is reproducible
// bit-for-bit across runs. Cheap to copy; safe to share across threads.
class Field {
  public:
    static Field make(std::uint32_t p, std::uint32_t k);

    std::uint32_t p() const;
    std::uint32_t k() const;
    std::uint64_t q() const;
    // k+1 coefficients, low-to-high, monic.
    std::span<const std::uint32_t> modulus() const;

    Felem zero() const { return 0; }
    Felem one() const { return 1; }
    Felem add(Felem a, Felem b) const;
    Felem sub(Felem a, Felem b) const;
    Felem neg(Felem a) const;
    Felem mul(Felem a, Felem b) const;
    Felem inv(Felem a) const;  // a != 0
    Felem pow(Felem x, std::uint64_t e) const;  // e >= 1

    // Tr(x) = x + x^p + ... + x^{p^{k-1}}, as a residue mod p.
    std::uint32_t trace(Felem x) const;

    // Additive character psi_m(x) = exp(2*pi*i * Tr(m*x) / p); psi_0 == 1.
    std::complex<double> psi(Felem m, Felem x) const;
    // exp(2*pi*i * r / p)
    std::complex<double> unit_root(std::uint32_t r) const;

    std::vector<std::uint32_t> digits(Felem x) const;
    Felem from_digits(std::span<const std::uint32_t> digs) const;

    // Element <-> text, used by the CSV formats: plain residue for k = 1;
    // base-p digit string low-to-high for k > 1 (dot-separated once p > 10).
    std::string format(Felem x) const;
    Felem parse(std::string_view text) const;

    bool same_as(const Field& other) const { return impl_ == other.impl_; }

  private:
    explicit Field(std::shared_ptr<const detail::FieldImpl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const detail::FieldImpl> impl_;
};

// Residue arithmetic mod an odd q >= 3. Elements are uint32 residues in [0, q).
class Ring {
  public:
    explicit Ring(std::uint64_t q);

    std::uint64_t q() const { return q_; }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::uint64_t s = std::uint64_t{a} + b;
        return static_cast<std::uint32_t>(s >= q_ ? s - q_ : s);
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        return a >= b ? a - b : static_cast<std::uint32_t>(a + q_ - b);
    }
    std::uint32_t neg(std::uint32_t a) const {
        return a == 0 ? 0 : static_cast<std::uint32_t>(q_ - a);
    }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>((std::uint64_t{a} * b) % q_);
    }

  private:
    std::uint64_t q_;
};

}  // namespace ffil
