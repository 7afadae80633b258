#include "ffil/geometry.hpp"

#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace ffil {

namespace {

std::uint64_t ipow(std::uint64_t base, std::uint32_t e) {
    std::uint64_t out = 1;
    for (std::uint32_t i = 0; i < e; ++i) out *= base;
    return out;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

DiagonalForm DiagonalForm::make(Field field, std::vector<Felem> coeffs,
                                std::vector<std::uint32_t> exps, std::uint32_t exp_cap) {
    if (coeffs.empty() || coeffs.size() != exps.size()) {
        throw invalid_input("form needs matching nonempty coefficient and exponent lists");
    }
    const std::uint64_t q = field.q();
    for (Felem a : coeffs) {
        if (a == 0) throw invalid_input("form coefficients must be nonzero");
        if (a >= q) throw invalid_input("form coefficient out of range");
    }
    for (std::uint32_t c : exps) {
        if (c < 2 || c > exp_cap) throw invalid_input("form exponent outside [2, cap]");
        if (gcd_u64(c, field.p()) != 1) {
            throw invalid_input("form exponent shares a factor with the characteristic");
        }
    }
    DiagonalForm out;
    out.field_ = field;
    out.d_ = static_cast<std::uint32_t>(coeffs.size());
    out.coeffs_ = std::move(coeffs);
    out.exps_ = std::move(exps);
    out.pow_tab_.resize(out.d_);
    for (std::uint32_t i = 0; i < out.d_; ++i) {
        auto& tab = out.pow_tab_[i];
        tab.resize(q);
        tab[0] = 0;  // c_i >= 2, so 0^{c_i} = 0
        for (std::uint64_t x = 1; x < q; ++x) {
            tab[x] = field.pow(static_cast<Felem>(x), out.exps_[i]);
        }
    }
    return out;
}

Felem DiagonalForm::eval(std::span<const Felem> v) const {
    if (v.size() != d_) throw invalid_input("point arity does not match form dimension");
    Felem acc = 0;
    for (std::uint32_t i = 0; i < d_; ++i) {
        acc = field_.add(acc, field_.mul(coeffs_[i], pow_tab_[i][v[i]]));
    }
    return acc;
}

Felem DiagonalForm::eval_diff(std::span<const Felem> x, std::span<const Felem> b) const {
    if (x.size() != d_ || b.size() != d_) {
        throw invalid_input("point arity does not match form dimension");
    }
    Felem acc = 0;
    for (std::uint32_t i = 0; i < d_; ++i) {
        Felem dif = field_.sub(x[i], b[i]);
        acc = field_.add(acc, field_.mul(coeffs_[i], pow_tab_[i][dif]));
    }
    return acc;
}

bool on_sphere(const DiagonalForm& Q, const QSphere& s, const Point& x) {
    return Q.eval_diff(x, s.center) == s.radius;
}

std::uint64_t count_incidences(const PointSet& P, const SphereSet& S, const DiagonalForm& Q) {
    if (P.empty() || S.empty()) return 0;
    const std::uint64_t q = Q.field().q();
    // one radius bitmap per distinct center
    struct Group {
        const Point* center;
        std::vector<char> radii;
    };
    std::vector<Group> groups;
    std::unordered_map<std::uint64_t, std::size_t> index;
    for (const QSphere& s : S) {
        std::uint64_t code = point_code(s.center, q);
        auto [it, fresh] = index.try_emplace(code, groups.size());
        if (fresh) groups.push_back({&s.center, std::vector<char>(q, 0)});
        groups[it->second].radii[s.radius] = 1;
    }
    std::uint64_t count = 0;
    for (const Point& p : P) {
        for (const Group& g : groups) {
            count += static_cast<unsigned char>(g.radii[Q.eval_diff(p, *g.center)]);
        }
    }
    return count;
}

bool on_ring_sphere(const Ring& R, const RingSphere& s, const Point& x) {
    if (x.size() != s.center.size()) throw invalid_input("point/sphere arity mismatch");
    std::uint32_t acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::uint32_t dif = R.sub(x[i], s.center[i]);
        acc = R.add(acc, R.mul(dif, dif));
    }
    return acc == s.radius;
}

std::uint64_t count_incidences_ring(const PointSet& P, const RingSphereSet& S, const Ring& R) {
    if (P.empty() || S.empty()) return 0;
    const std::uint64_t q = R.q();
    struct Group {
        const Point* center;
        std::vector<char> radii;
    };
    std::vector<Group> groups;
    std::unordered_map<std::uint64_t, std::size_t> index;
    for (const RingSphere& s : S) {
        std::uint64_t code = point_code(s.center, q);
        auto [it, fresh] = index.try_emplace(code, groups.size());
        if (fresh) groups.push_back({&s.center, std::vector<char>(q, 0)});
        groups[it->second].radii[s.radius] = 1;
    }
    std::uint64_t count = 0;
    for (const Point& p : P) {
        for (const Group& g : groups) {
            const Point& b = *g.center;
            std::uint32_t acc = 0;
            for (std::size_t i = 0; i < p.size(); ++i) {
                std::uint32_t dif = R.sub(p[i], b[i]);
                acc = R.add(acc, R.mul(dif, dif));
            }
            count += static_cast<unsigned char>(g.radii[acc]);
        }
    }
    return count;
}

std::vector<std::uint64_t> distance_histogram(const PointSet& E, const DiagonalForm& Q,
                                              bool include_equal) {
    std::vector<std::uint64_t> hist(Q.field().q(), 0);
    for (std::size_t i = 0; i < E.size(); ++i) {
        for (std::size_t j = 0; j < E.size(); ++j) {
            if (i == j) {
                if (include_equal) hist[0] += 1;  // Q(0) = 0
                continue;
            }
            hist[Q.eval_diff(E[i], E[j])] += 1;
        }
    }
    return hist;
}

std::vector<Felem> pinned_distance_set(const PointSet& E, const Point& p,
                                       const DiagonalForm& Q) {
    std::vector<char> seen(Q.field().q(), 0);
    for (const Point& y : E) seen[Q.eval_diff(y, p)] = 1;
    std::vector<Felem> out;
    for (std::size_t r = 0; r < seen.size(); ++r) {
        if (seen[r]) out.push_back(static_cast<Felem>(r));
    }
    return out;
}

std::uint64_t zero_distance_pairs(const PointSet& E, const DiagonalForm& Q) {
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < E.size(); ++i) {
        for (std::size_t j = 0; j < E.size(); ++j) {
            if (i != j && Q.eval_diff(E[i], E[j]) == 0) ++count;
        }
    }
    return count;
}

std::uint64_t point_code(const Point& pt, std::uint64_t q) {
    std::uint64_t code = 0;
    for (std::size_t i = pt.size(); i-- > 0;) code = code * q + pt[i];
    return code;
}

Point point_from_code(std::uint64_t code, std::uint64_t q, std::uint32_t d) {
    Point pt(d);
    for (std::uint32_t i = 0; i < d; ++i) {
        pt[i] = static_cast<Felem>(code % q);
        code /= q;
    }
    return pt;
}

PointSet all_points(std::uint64_t q, std::uint32_t d) {
    std::uint64_t total = ipow(q, d);
    PointSet out;
    out.reserve(total);
    for (std::uint64_t c = 0; c < total; ++c) out.push_back(point_from_code(c, q, d));
    return out;
}

SphereSet all_spheres(const Field& F, std::uint32_t d) {
    const std::uint64_t q = F.q();
    SphereSet out;
    out.reserve(ipow(q, d + 1));
    for (std::uint64_t c = 0; c < ipow(q, d); ++c) {
        Point center = point_from_code(c, q, d);
        for (std::uint64_t r = 0; r < q; ++r) {
            out.push_back({center, static_cast<Felem>(r)});
        }
    }
    return out;
}

RingSphereSet all_ring_spheres(const Ring& R, std::uint32_t d) {
    const std::uint64_t q = R.q();
    RingSphereSet out;
    out.reserve(ipow(q, d + 1));
    for (std::uint64_t c = 0; c < ipow(q, d); ++c) {
        Point center = point_from_code(c, q, d);
        for (std::uint64_t r = 0; r < q; ++r) {
            out.push_back({center, static_cast<std::uint32_t>(r)});
        }
    }
    return out;
}

PointSet points_from_codes(std::span<const std::uint64_t> codes, std::uint64_t q,
                           std::uint32_t d) {
    PointSet out;
    out.reserve(codes.size());
    for (std::uint64_t c : codes) out.push_back(point_from_code(c, q, d));
    return out;
}

SphereSet spheres_from_codes(std::span<const std::uint64_t> codes, std::uint64_t q,
                             std::uint32_t d) {
    SphereSet out;
    out.reserve(codes.size());
    for (std::uint64_t c : codes) {
        out.push_back({point_from_code(c / q, q, d), static_cast<Felem>(c % q)});
    }
    return out;
}

RingSphereSet ring_spheres_from_codes(std::span<const std::uint64_t> codes, std::uint64_t q,
                                      std::uint32_t d) {
    RingSphereSet out;
    out.reserve(codes.size());
    for (std::uint64_t c : codes) {
        out.push_back({point_from_code(c / q, q, d), static_cast<std::uint32_t>(c % q)});
    }
    return out;
}

void validate_point_set(const PointSet& P, std::uint64_t q, std::uint32_t d) {
    std::set<std::uint64_t> seen;
    for (const Point& p : P) {
        if (p.size() != d) throw invalid_input("point arity mismatch");
        for (Felem c : p) {
            if (c >= q) throw invalid_input("point coordinate out of range");
        }
        if (!seen.insert(point_code(p, q)).second) {
            throw invalid_input("duplicate point in set");
        }
    }
}

void validate_sphere_set(const SphereSet& S, std::uint64_t q, std::uint32_t d) {
    std::set<std::uint64_t> seen;
    for (const QSphere& s : S) {
        if (s.center.size() != d) throw invalid_input("sphere center arity mismatch");
        for (Felem c : s.center) {
            if (c >= q) throw invalid_input("sphere coordinate out of range");
        }
        if (s.radius >= q) throw invalid_input("sphere radius out of range");
        std::uint64_t code = point_code(s.center, q) * q + s.radius;
        if (!seen.insert(code).second) throw invalid_input("duplicate sphere in set");
    }
}

// --- CSV ---------------------------------------------------------------------

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r' && ch != ' ') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

void write_points_csv(std::ostream& os, const PointSet& P, const Field& F) {
    for (const Point& p : P) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i > 0) os << ',';
            os << F.format(p[i]);
        }
        os << '\n';
    }
}

PointSet read_points_csv(std::istream& is, const Field& F, std::uint32_t d) {
    PointSet out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != d) {
            throw invalid_input("points csv line " + std::to_string(lineno) +
                                ": expected " + std::to_string(d) + " fields");
        }
        Point p(d);
        for (std::uint32_t i = 0; i < d; ++i) p[i] = F.parse(fields[i]);
        out.push_back(std::move(p));
    }
    validate_point_set(out, F.q(), d);
    return out;
}

void write_spheres_csv(std::ostream& os, const SphereSet& S, const Field& F) {
    for (const QSphere& s : S) {
        os << F.format(s.radius);
        for (Felem c : s.center) os << ',' << F.format(c);
        os << '\n';
    }
}

SphereSet read_spheres_csv(std::istream& is, const Field& F, std::uint32_t d) {
    SphereSet out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != d + 1) {
            throw invalid_input("spheres csv line " + std::to_string(lineno) +
                                ": expected " + std::to_string(d + 1) + " fields");
        }
        QSphere s;
        s.radius = F.parse(fields[0]);
        s.center.resize(d);
        for (std::uint32_t i = 0; i < d; ++i) s.center[i] = F.parse(fields[i + 1]);
        out.push_back(std::move(s));
    }
    validate_sphere_set(out, F.q(), d);
    return out;
}

}  // namespace ffil
