#include "ffil/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ffil {

namespace {

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

// --- polynomial arithmetic over Z_p (coefficients low-to-high) -------------

using Poly = std::vector<std::uint32_t>;

void ptrim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly pmul(const Poly& a, const Poly& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] = static_cast<std::uint32_t>(
                (out[i + j] + std::uint64_t{a[i]} * b[j]) % p);
        }
    }
    ptrim(out);
    return out;
}

// a mod f, f monic
Poly pmod(Poly a, const Poly& f, std::uint32_t p) {
    ptrim(a);
    const std::size_t df = f.size() - 1;
    while (a.size() > df) {
        std::uint32_t lead = a.back();
        std::size_t shift = a.size() - 1 - df;
        if (lead != 0) {
            for (std::size_t i = 0; i < f.size(); ++i) {
                std::uint64_t t = std::uint64_t{f[i]} * lead % p;
                std::uint32_t& c = a[i + shift];
                c = static_cast<std::uint32_t>((c + p - t) % p);
            }
        }
        a.pop_back();
        ptrim(a);
        if (a.empty()) break;
    }
    return a;
}

Poly pmulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
    return pmod(pmul(a, b, p), f, p);
}

Poly ppowmod(Poly base, std::uint64_t e, const Poly& f, std::uint32_t p) {
    Poly result{1};
    base = pmod(std::move(base), f, p);
    while (e > 0) {
        if (e & 1) result = pmulmod(result, base, f, p);
        base = pmulmod(base, base, f, p);
        e >>= 1;
    }
    return result;
}

Poly pgcd(Poly a, Poly b, std::uint32_t p) {
    ptrim(a);
    ptrim(b);
    while (!b.empty()) {
        // make b monic before reducing
        std::uint32_t lead = b.back();
        if (lead != 1) {
            // inverse of lead mod p via Fermat
            std::uint64_t inv = 1, base = lead, e = p - 2;
            while (e > 0) {
                if (e & 1) inv = inv * base % p;
                base = base * base % p;
                e >>= 1;
            }
            for (auto& c : b) c = static_cast<std::uint32_t>(c * inv % p);
        }
        Poly r = pmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Rabin irreducibility test for monic f of degree k over Z_p.
bool irreducible(const Poly& f, std::uint32_t p) {
    const std::size_t k = f.size() - 1;
    const Poly x{0, 1};
    // frob[j] = x^(p^j) mod f
    Poly g = x;
    std::vector<Poly> frob(k + 1);
    frob[0] = x;
    for (std::size_t j = 1; j <= k; ++j) {
        g = ppowmod(g, p, f, p);
        frob[j] = g;
    }
    // x^(p^k) == x (mod f)
    Poly diff = frob[k];
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    ptrim(diff);
    if (!diff.empty()) return false;
    // gcd(x^(p^(k/t)) - x, f) == 1 for every prime t | k
    for (std::size_t t = 2; t <= k; ++t) {
        if (k % t != 0) continue;
        bool t_prime = true;
        for (std::size_t d = 2; d * d <= t; ++d) {
            if (t % d == 0) {
                t_prime = false;
                break;
            }
        }
        if (!t_prime) continue;
        Poly h = frob[k / t];
        if (h.size() < 2) h.resize(2, 0);
        h[1] = (h[1] + p - 1) % p;
        ptrim(h);
        Poly g2 = pgcd(f, h, p);
        if (g2.size() != 1) return false;
    }
    return true;
}

constexpr std::uint64_t kTableCapQ = 1024;   // full add/mul tables below this
constexpr std::uint64_t kTraceCapQ = 1 << 16;
constexpr std::uint32_t kRootCapP = 1 << 16;

}  // namespace

namespace detail {

struct FieldImpl {
    std::uint32_t p = 0;
    std::uint32_t k = 0;
    std::uint64_t q = 0;
    Poly modulus;  // k+1 coeffs, monic

    bool tables = false;
    std::vector<Felem> add_tab;  // q*q
    std::vector<Felem> mul_tab;  // q*q
    std::vector<std::uint32_t> trace_tab;
    std::vector<std::complex<double>> roots;  // p-th roots of unity

    std::vector<std::uint32_t> digits(Felem x) const {
        std::vector<std::uint32_t> out(k);
        for (std::uint32_t i = 0; i < k; ++i) {
            out[i] = static_cast<std::uint32_t>(x % p);
            x /= p;
        }
        return out;
    }

    Felem from_digits(std::span<const std::uint32_t> digs) const {
        if (digs.size() != k) throw invalid_input("element digit count mismatch");
        std::uint64_t v = 0;
        for (std::size_t i = k; i-- > 0;) {
            if (digs[i] >= p) throw invalid_input("element digit out of range");
            v = v * p + digs[i];
        }
        return static_cast<Felem>(v);
    }

    Felem add_slow(Felem a, Felem b) const {
        std::uint64_t out = 0, mult = 1;
        for (std::uint32_t i = 0; i < k; ++i) {
            std::uint64_t s = (a % p + b % p) % p;
            out += s * mult;
            mult *= p;
            a /= p;
            b /= p;
        }
        return static_cast<Felem>(out);
    }

    Felem mul_slow(Felem a, Felem b) const {
        Poly pa = digits(a), pb = digits(b);
        ptrim(pa);
        ptrim(pb);
        Poly r = pmod(pmul(pa, pb, p), modulus, p);
        r.resize(k, 0);
        return from_digits(r);
    }

    Felem add(Felem a, Felem b) const {
        if (k == 1) {
            std::uint64_t s = std::uint64_t{a} + b;
            return static_cast<Felem>(s >= q ? s - q : s);
        }
        if (tables) return add_tab[a * q + b];
        return add_slow(a, b);
    }

    Felem neg(Felem a) const {
        if (k == 1) return a == 0 ? 0 : static_cast<Felem>(q - a);
        std::uint64_t out = 0, mult = 1;
        Felem x = a;
        for (std::uint32_t i = 0; i < k; ++i) {
            std::uint64_t d = x % p;
            out += (d == 0 ? 0 : p - d) * mult;
            mult *= p;
            x /= p;
        }
        return static_cast<Felem>(out);
    }

    Felem mul(Felem a, Felem b) const {
        if (k == 1) return static_cast<Felem>(std::uint64_t{a} * b % q);
        if (tables) return mul_tab[a * q + b];
        return mul_slow(a, b);
    }

    Felem pow(Felem x, std::uint64_t e) const {
        Felem result = 1;
        while (e > 0) {
            if (e & 1) result = mul(result, x);
            x = mul(x, x);
            e >>= 1;
        }
        return result;
    }

    std::uint32_t trace_slow(Felem x) const {
        Felem acc = x;
        Felem y = x;
        for (std::uint32_t i = 1; i < k; ++i) {
            y = pow(y, p);
            acc = add(acc, y);
        }
        // lies in the prime subfield: index == constant digit
        return static_cast<std::uint32_t>(acc % p);
    }

    std::uint32_t trace(Felem x) const {
        if (k == 1) return x;
        if (!trace_tab.empty()) return trace_tab[x];
        return trace_slow(x);
    }

    std::complex<double> unit_root(std::uint32_t r) const {
        if (!roots.empty()) return roots[r % p];
        double ang = 2.0 * std::numbers::pi * (r % p) / p;
        return {std::cos(ang), std::sin(ang)};
    }
};

}  // namespace detail

Field Field::make(std::uint32_t p, std::uint32_t k) {
    if (p < 3 || p % 2 == 0 || !is_prime_u64(p)) {
        throw invalid_input("field characteristic must be an odd prime");
    }
    if (k < 1) throw invalid_input("extension degree must be >= 1");
    double qd = std::pow(static_cast<double>(p), static_cast<double>(k));
    if (qd > 9.0e15) throw invalid_input("field too large");

    auto impl = std::make_shared<detail::FieldImpl>();
    impl->p = p;
    impl->k = k;
    impl->q = 1;
    for (std::uint32_t i = 0; i < k; ++i) impl->q *= p;

    if (k == 1) {
        impl->modulus = Poly{0, 1};  // x
    } else {
        // scan monic degree-k candidates in lexicographic order of the
        // low-to-high coefficient sequence (c_0 compared first)
        std::uint64_t total = impl->q;
        bool found = false;
        for (std::uint64_t w = 0; w < total && !found; ++w) {
            Poly f(k + 1, 0);
            f[k] = 1;
            std::uint64_t rest = w;
            for (std::uint32_t i = 0; i < k; ++i) {
                std::uint32_t digit_pos = k - 1 - i;  // low coefficient varies slowest
                std::uint64_t scale = 1;
                for (std::uint32_t j = 0; j < digit_pos; ++j) scale *= p;
                f[i] = static_cast<std::uint32_t>(rest / scale);
                rest %= scale;
            }
            if (f[0] == 0) continue;  // divisible by x
            if (irreducible(f, p)) {
                impl->modulus = f;
                found = true;
            }
        }
        if (!found) throw std::runtime_error("no irreducible modulus found");
    }

    if (k > 1 && impl->q <= kTableCapQ) {
        const std::uint64_t q = impl->q;
        impl->add_tab.resize(q * q);
        impl->mul_tab.resize(q * q);
        for (std::uint64_t a = 0; a < q; ++a) {
            for (std::uint64_t b = 0; b < q; ++b) {
                impl->add_tab[a * q + b] =
                    impl->add_slow(static_cast<Felem>(a), static_cast<Felem>(b));
                impl->mul_tab[a * q + b] =
                    impl->mul_slow(static_cast<Felem>(a), static_cast<Felem>(b));
            }
        }
        impl->tables = true;
    }
    if (k > 1 && impl->q <= kTraceCapQ) {
        impl->trace_tab.resize(impl->q);
        for (std::uint64_t x = 0; x < impl->q; ++x) {
            impl->trace_tab[x] = impl->trace_slow(static_cast<Felem>(x));
        }
    }
    if (p <= kRootCapP) {
        impl->roots.resize(p);
        for (std::uint32_t r = 0; r < p; ++r) {
            double ang = 2.0 * std::numbers::pi * r / p;
            impl->roots[r] = {std::cos(ang), std::sin(ang)};
        }
    }
    return Field(std::move(impl));
}

std::uint32_t Field::p() const { return impl_->p; }
std::uint32_t Field::k() const { return impl_->k; }
std::uint64_t Field::q() const { return impl_->q; }
std::span<const std::uint32_t> Field::modulus() const { return impl_->modulus; }

Felem Field::add(Felem a, Felem b) const { return impl_->add(a, b); }
Felem Field::sub(Felem a, Felem b) const { return impl_->add(a, impl_->neg(b)); }
Felem Field::neg(Felem a) const { return impl_->neg(a); }
Felem Field::mul(Felem a, Felem b) const { return impl_->mul(a, b); }

Felem Field::inv(Felem a) const {
    if (a == 0) throw invalid_input("zero has no multiplicative inverse");
    return impl_->pow(a, impl_->q - 2);
}

Felem Field::pow(Felem x, std::uint64_t e) const {
    if (e < 1) throw invalid_input("exponent must be >= 1");
    if (x >= impl_->q) throw invalid_input("malformed field element");
    return impl_->pow(x, e);
}

std::uint32_t Field::trace(Felem x) const {
    if (x >= impl_->q) throw invalid_input("malformed field element");
    return impl_->trace(x);
}

std::complex<double> Field::psi(Felem m, Felem x) const {
    return impl_->unit_root(impl_->trace(impl_->mul(m, x)));
}

std::complex<double> Field::unit_root(std::uint32_t r) const { return impl_->unit_root(r); }

std::vector<std::uint32_t> Field::digits(Felem x) const { return impl_->digits(x); }

Felem Field::from_digits(std::span<const std::uint32_t> digs) const {
    return impl_->from_digits(digs);
}

std::string Field::format(Felem x) const {
    if (impl_->k == 1) return std::to_string(x);
    auto digs = impl_->digits(x);
    std::string out;
    for (std::size_t i = 0; i < digs.size(); ++i) {
        if (impl_->p > 10 && i > 0) out += '.';
        out += std::to_string(digs[i]);
    }
    return out;
}

Felem Field::parse(std::string_view text) const {
    if (text.empty()) throw invalid_input("empty field element");
    std::vector<std::uint32_t> digs;
    if (impl_->k == 1) {
        std::uint64_t v = 0;
        for (char ch : text) {
            if (ch < '0' || ch > '9') throw invalid_input("bad field element digit");
            v = v * 10 + static_cast<std::uint64_t>(ch - '0');
            if (v >= impl_->q) throw invalid_input("field element out of range");
        }
        return static_cast<Felem>(v);
    }
    if (impl_->p <= 10) {
        for (char ch : text) {
            if (ch < '0' || ch > '9') throw invalid_input("bad field element digit");
            digs.push_back(static_cast<std::uint32_t>(ch - '0'));
        }
    } else {
        std::uint32_t cur = 0;
        bool have = false;
        for (char ch : text) {
            if (ch == '.') {
                if (!have) throw invalid_input("bad field element format");
                digs.push_back(cur);
                cur = 0;
                have = false;
            } else if (ch >= '0' && ch <= '9') {
                cur = cur * 10 + static_cast<std::uint32_t>(ch - '0');
                have = true;
            } else {
                throw invalid_input("bad field element digit");
            }
        }
        if (!have) throw invalid_input("bad field element format");
        digs.push_back(cur);
    }
    return impl_->from_digits(digs);
}

Ring::Ring(std::uint64_t q) : q_(q) {
    if (q < 3 || q % 2 == 0) throw invalid_input("ring modulus must be odd and >= 3");
}

DivisorStats divisor_stats(std::uint64_t q) {
    if (q < 3 || q % 2 == 0) throw invalid_input("q must be odd and >= 3");
    std::uint64_t tau = 0;
    std::uint64_t gamma = 0;
    for (std::uint64_t d = 1; d * d <= q; ++d) {
        if (q % d != 0) continue;
        tau += (d * d == q) ? 1 : 2;
        if (gamma == 0 && d > 1 && is_prime_u64(d)) gamma = d;
    }
    if (gamma == 0) gamma = q;  // q itself prime
    return {tau, gamma};
}

}  // namespace ffil
