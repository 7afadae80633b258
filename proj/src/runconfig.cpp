#include "ffil/runconfig.hpp"

namespace ffil {

namespace {

std::uint64_t parse_u64(const std::string& text) {
    if (text.empty()) throw invalid_input("empty number");
    std::uint64_t v = 0;
    for (char ch : text) {
        if (ch < '0' || ch > '9') throw invalid_input("bad number: " + text);
        v = v * 10 + static_cast<std::uint64_t>(ch - '0');
        if (v > (1ULL << 62)) throw invalid_input("number too large: " + text);
    }
    return v;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

}  // namespace

PrimePower parse_prime_power(const std::string& text) {
    PrimePower out;
    auto caret = text.find('^');
    if (caret != std::string::npos) {
        std::uint64_t p = parse_u64(text.substr(0, caret));
        std::uint64_t k = parse_u64(text.substr(caret + 1));
        if (p < 3 || p % 2 == 0 || !is_prime(p)) {
            throw invalid_input("field characteristic must be an odd prime: " + text);
        }
        if (k < 1 || k > 32) throw invalid_input("bad extension degree: " + text);
        out.p = static_cast<std::uint32_t>(p);
        out.k = static_cast<std::uint32_t>(k);
        out.q = 1;
        for (std::uint32_t i = 0; i < out.k; ++i) {
            out.q *= p;
            if (out.q > (1ULL << 40)) throw invalid_input("field too large: " + text);
        }
        return out;
    }
    std::uint64_t q = parse_u64(text);
    if (q < 3 || q % 2 == 0) throw invalid_input("field size must be an odd prime power, got " + text);
    // factor as p^k
    std::uint64_t p = 0;
    for (std::uint64_t d = 3; d * d <= q; d += 2) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) p = q;  // prime
    std::uint64_t rest = q;
    std::uint32_t k = 0;
    while (rest % p == 0) {
        rest /= p;
        ++k;
    }
    if (rest != 1 || !is_prime(p)) {
        throw invalid_input("not a prime power: " + text);
    }
    out.p = static_cast<std::uint32_t>(p);
    out.k = k;
    out.q = q;
    return out;
}

std::uint64_t parse_odd_q(const std::string& text) {
    std::uint64_t q = parse_u64(text);
    if (q < 3 || q % 2 == 0) throw invalid_input("modulus must be odd and >= 3, got " + text);
    return q;
}

std::vector<std::uint64_t> parse_uint_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            out.push_back(parse_u64(cur));
            cur.clear();
        } else if (ch != ' ') {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(parse_u64(cur));
    if (out.empty()) throw invalid_input("empty list");
    return out;
}

Field field_from_config(const RunConfig& cfg) {
    PrimePower pp = parse_prime_power(cfg.q_text);
    return Field::make(pp.p, pp.k);
}

DiagonalForm form_from_config(const RunConfig& cfg, const Field& F) {
    if (cfg.d < 1) throw invalid_input("dimension must be >= 1");
    std::vector<std::uint64_t> exps = cfg.exps;
    std::vector<std::uint64_t> coeffs = cfg.coeffs;
    if (exps.empty()) exps.assign(cfg.d, 2);  // default form: sum of squares
    if (coeffs.empty()) coeffs.assign(cfg.d, 1);
    if (exps.size() != cfg.d || coeffs.size() != cfg.d) {
        throw invalid_input("exponent/coefficient lists must have d entries");
    }
    std::vector<Felem> cs;
    std::vector<std::uint32_t> es;
    for (std::uint64_t c : coeffs) {
        if (c >= F.q()) throw invalid_input("coefficient out of range");
        cs.push_back(static_cast<Felem>(c));
    }
    for (std::uint64_t e : exps) es.push_back(static_cast<std::uint32_t>(e));
    return DiagonalForm::make(F, std::move(cs), std::move(es), cfg.exp_cap);
}

}  // namespace ffil
