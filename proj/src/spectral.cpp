#include "ffil/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ffil/kernels.hpp"
#include "ffil/parallel.hpp"

namespace ffil {

namespace {

std::uint64_t ipow(std::uint64_t base, std::uint32_t e) {
    std::uint64_t out = 1;
    for (std::uint32_t i = 0; i < e; ++i) out *= base;
    return out;
}

constexpr std::uint64_t kSpectrumVertexCap = 1ULL << 22;
constexpr std::uint64_t kSpectrumFieldCap = 1024;

// Trace-of-product table tp[a*q + b] = Tr(a*b) mod p, the workhorse behind all
// character evaluations.
std::vector<std::uint16_t> trace_product_table(const Field& F) {
    const std::uint64_t q = F.q();
    std::vector<std::uint16_t> tp(q * q);
    for (std::uint64_t a = 0; a < q; ++a) {
        for (std::uint64_t b = 0; b < q; ++b) {
            tp[a * q + b] = static_cast<std::uint16_t>(
                F.trace(F.mul(static_cast<Felem>(a), static_cast<Felem>(b))));
        }
    }
    return tp;
}

struct RootTables {
    std::vector<double> cos_tab;
    std::vector<double> sin_tab;
};

RootTables root_tables(const Field& F) {
    RootTables t;
    const std::uint32_t p = F.p();
    t.cos_tab.resize(p);
    t.sin_tab.resize(p);
    for (std::uint32_t r = 0; r < p; ++r) {
        auto z = F.unit_root(r);
        t.cos_tab[r] = z.real();
        t.sin_tab[r] = z.imag();
    }
    return t;
}

}  // namespace

std::string_view graph_kind_name(GraphKind k) {
    switch (k) {
        case GraphKind::cayley_q: return "cayley_q";
        case GraphKind::cayley_qprime: return "cayley_qprime";
        case GraphKind::sum_product: return "sum_product";
    }
    return "?";
}

// --- construction -----------------------------------------------------------

AlgebraicGraph AlgebraicGraph::cayley_q(DiagonalForm Q) {
    std::uint32_t d = Q.d();
    return make_cayley_impl(std::move(Q), GraphKind::cayley_q, d);
}

AlgebraicGraph AlgebraicGraph::cayley_qprime(DiagonalForm Q) {
    // double the form: Q'(x_1..x_2d) = Q(x_1..x_d) - Q(x_{d+1}..x_{2d})
    const Field& F = Q.field();
    std::vector<Felem> coeffs(Q.coeffs().begin(), Q.coeffs().end());
    std::vector<std::uint32_t> exps(Q.exps().begin(), Q.exps().end());
    std::vector<Felem> coeffs2 = coeffs;
    std::vector<std::uint32_t> exps2 = exps;
    for (Felem a : coeffs) coeffs2.push_back(F.neg(a));
    for (std::uint32_t c : exps) exps2.push_back(c);
    std::uint32_t cap = *std::max_element(exps.begin(), exps.end());
    DiagonalForm doubled = DiagonalForm::make(F, std::move(coeffs2), std::move(exps2), cap);
    return make_cayley_impl(std::move(doubled), GraphKind::cayley_qprime, Q.d());
}

AlgebraicGraph AlgebraicGraph::sum_product(Ring R, std::uint32_t d) {
    if (d < 1) throw invalid_input("dimension must be >= 1");
    AlgebraicGraph g;
    g.kind_ = GraphKind::sum_product;
    g.q_ = R.q();
    g.base_d_ = d;
    g.arity_ = d;
    g.n_ = ipow(g.q_, d + 1);
    g.degree_ = ipow(g.q_, d);
    g.ring_ = std::move(R);
    return g;
}

AlgebraicGraph AlgebraicGraph::make_cayley_impl(DiagonalForm Q, GraphKind kind,
                                                std::uint32_t base_d) {
    AlgebraicGraph g;
    g.kind_ = kind;
    g.q_ = Q.field().q();
    g.base_d_ = base_d;
    g.arity_ = Q.d();
    g.n_ = ipow(g.q_, g.arity_ + 1);
    g.degree_ = ipow(g.q_, g.arity_);
    // connection data: for each u in F_q^D store u, -u and Q(u)
    const Field& F = Q.field();
    const std::uint32_t D = g.arity_;
    const std::uint64_t deg = g.degree_;
    g.u_digits_.resize(deg * D);
    g.neg_u_digits_.resize(deg * D);
    g.q_of_u_.resize(deg);
    Point u(D, 0);
    for (std::uint64_t j = 0; j < deg; ++j) {
        std::uint64_t rest = j;
        for (std::uint32_t i = 0; i < D; ++i) {
            u[i] = static_cast<Felem>(rest % g.q_);
            rest /= g.q_;
        }
        g.q_of_u_[j] = Q.eval(u);
        for (std::uint32_t i = 0; i < D; ++i) {
            g.u_digits_[j * D + i] = u[i];
            g.neg_u_digits_[j * D + i] = F.neg(u[i]);
        }
    }
    g.form_ = std::move(Q);
    return g;
}

const DiagonalForm& AlgebraicGraph::form() const {
    if (!form_) throw invalid_input("graph has no diagonal form");
    return *form_;
}

const Field& AlgebraicGraph::field() const { return form().field(); }

const Ring& AlgebraicGraph::ring() const {
    if (!ring_) throw invalid_input("graph has no ring context");
    return *ring_;
}

std::vector<std::uint32_t> AlgebraicGraph::decode(std::uint64_t v) const {
    std::vector<std::uint32_t> out(coords());
    for (std::uint32_t i = 0; i < coords(); ++i) {
        out[i] = static_cast<std::uint32_t>(v % q_);
        v /= q_;
    }
    return out;
}

std::uint64_t AlgebraicGraph::encode(std::span<const std::uint32_t> coords) const {
    std::uint64_t v = 0;
    for (std::size_t i = coords.size(); i-- > 0;) v = v * q_ + coords[i];
    return v;
}

void AlgebraicGraph::out_neighbors(std::uint64_t v, std::vector<std::uint64_t>& out) const {
    auto xs = decode(v);
    const std::uint32_t D = arity_;
    if (is_cayley()) {
        const Field& F = field();
        for (std::uint64_t j = 0; j < degree_; ++j) {
            // Y = (x0 + Q(u), x - u)
            std::uint64_t id = 0;
            for (std::uint32_t i = D; i-- > 0;) {
                Felem yi = F.sub(static_cast<Felem>(xs[i + 1]), u_digits_[j * D + i]);
                id = id * q_ + yi;
            }
            Felem y0 = F.add(static_cast<Felem>(xs[0]), q_of_u_[j]);
            out.push_back(id * q_ + y0);
        }
    } else {
        const Ring& R = *ring_;
        const std::uint32_t a = xs[0];
        for (std::uint64_t j = 0; j < degree_; ++j) {
            // neighbor of (a, b) indexed by e: (b.e - a, e)
            std::uint64_t rest = j;
            std::uint64_t dot = 0;
            for (std::uint32_t i = 0; i < D; ++i) {
                std::uint32_t ei = static_cast<std::uint32_t>(rest % q_);
                rest /= q_;
                dot += std::uint64_t{xs[i + 1]} * ei;
            }
            std::uint32_t c = R.sub(static_cast<std::uint32_t>(dot % q_), a);
            out.push_back(j * q_ + c);
        }
    }
}

// --- character-sum spectrum ---------------------------------------------------

namespace {

struct CharSumPlan {
    const AlgebraicGraph* g;
    std::uint64_t q;
    std::uint32_t p;
    std::uint32_t D;
    std::vector<std::uint16_t> tp;
    RootTables roots;
};

CharSumPlan char_sum_plan(const AlgebraicGraph& g) {
    if (!g.is_cayley()) throw invalid_input("character-sum spectrum needs a Cayley kind");
    if (g.q() > kSpectrumFieldCap) throw cap_exceeded("field too large for spectrum tables");
    if (g.n() > kSpectrumVertexCap) throw cap_exceeded("graph too large for full spectrum");
    CharSumPlan plan{&g, g.q(), g.field().p(), g.form().d(), trace_product_table(g.field()),
                     root_tables(g.field())};
    return plan;
}

// lambda_m for one character; idx is scratch of size degree.
std::complex<double> eigenvalue_for(const CharSumPlan& plan, const AlgebraicGraph& g,
                                    std::uint64_t m, std::vector<std::uint32_t>& idx) {
    const std::uint64_t q = plan.q;
    const std::uint32_t D = plan.D;
    const std::uint64_t deg = g.degree();
    auto md = g.decode(m);
    const std::uint16_t* tp0 = plan.tp.data() + std::uint64_t{md[0]} * q;
    const Felem* qv = g.connection_q_values().data();
    const Felem* negd = g.connection_neg_digits().data();
    for (std::uint64_t j = 0; j < deg; ++j) {
        std::uint32_t t = tp0[qv[j]];
        const Felem* negu = negd + j * D;
        for (std::uint32_t i = 0; i < D; ++i) {
            t += plan.tp[std::uint64_t{md[i + 1]} * q + negu[i]];
        }
        idx[j] = t % plan.p;
    }
    double re = kernels::gather_sum(plan.roots.cos_tab.data(), idx.data(), deg);
    double im = kernels::gather_sum(plan.roots.sin_tab.data(), idx.data(), deg);
    return {re, im};
}

}  // namespace

std::vector<std::complex<double>> cayley_spectrum(const AlgebraicGraph& g, unsigned jobs) {
    CharSumPlan plan = char_sum_plan(g);
    std::vector<std::complex<double>> out(g.n());
    parallel_chunks(g.n(), jobs, [&](std::size_t begin, std::size_t end) {
        std::vector<std::uint32_t> idx(g.degree());
        for (std::size_t m = begin; m < end; ++m) {
            out[m] = eigenvalue_for(plan, g, m, idx);
        }
    });
    return out;
}

std::complex<double> cayley_eigenvalue(const AlgebraicGraph& g, std::uint64_t m) {
    CharSumPlan plan = char_sum_plan(g);
    std::vector<std::uint32_t> idx(g.degree());
    return eigenvalue_for(plan, g, m, idx);
}

double eigvec_residual(const AlgebraicGraph& g, std::uint64_t m, std::uint64_t cap) {
    if (!g.is_cayley()) throw invalid_input("residual check needs a Cayley kind");
    if (g.n() > cap) throw cap_exceeded("graph exceeds the residual cap");
    const std::uint64_t n = g.n();
    const std::uint64_t deg = g.degree();
    CharSumPlan plan = char_sum_plan(g);
    std::vector<std::uint32_t> scratch(deg);
    const std::complex<double> lambda = eigenvalue_for(plan, g, m, scratch);

    // character vector over the vertices
    auto md = g.decode(m);
    std::vector<double> vre(n), vim(n);
    for (std::uint64_t x = 0; x < n; ++x) {
        auto xd = g.decode(x);
        std::uint32_t t = 0;
        for (std::uint32_t c = 0; c < g.coords(); ++c) {
            t += plan.tp[std::uint64_t{md[c]} * plan.q + xd[c]];
        }
        t %= plan.p;
        vre[x] = plan.roots.cos_tab[t];
        vim[x] = plan.roots.sin_tab[t];
    }

    double worst = 0.0;
    std::vector<std::uint64_t> nb;
    std::vector<std::uint32_t> nb32(deg);
    nb.reserve(deg);
    for (std::uint64_t x = 0; x < n; ++x) {
        nb.clear();
        g.out_neighbors(x, nb);
        for (std::uint64_t j = 0; j < deg; ++j) nb32[j] = static_cast<std::uint32_t>(nb[j]);
        double sre = kernels::gather_sum(vre.data(), nb32.data(), deg);
        double sim = kernels::gather_sum(vim.data(), nb32.data(), deg);
        double dre = sre - (lambda.real() * vre[x] - lambda.imag() * vim[x]);
        double dim = sim - (lambda.real() * vim[x] + lambda.imag() * vre[x]);
        worst = std::max(worst, std::hypot(dre, dim));
    }
    return worst;
}

// --- dense symmetric path ------------------------------------------------------

std::vector<double> jacobi_eigenvalues(std::vector<double>& a, std::size_t n, double off_tol,
                                       int max_sweeps) {
    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            s += kernels::dot(a.data() + i * n + i + 1, a.data() + i * n + i + 1,
                              n - i - 1);
        }
        return std::sqrt(2.0 * s);
    };
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_norm() <= off_tol) {
            std::vector<double> eig(n);
            for (std::size_t i = 0; i < n; ++i) eig[i] = a[i * n + i];
            std::sort(eig.begin(), eig.end());
            return eig;
        }
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double apq = a[i * n + j];
                if (apq == 0.0) continue;
                double tau = (a[j * n + j] - a[i * n + i]) / (2.0 * apq);
                double t = tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                      : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                // rows: row_i <- c*row_i - s*row_j, row_j <- s*row_i + c*row_j
                kernels::rotate_pair(a.data() + j * n, a.data() + i * n, n, c, s);
                // columns, same rotation on the right
                for (std::size_t k = 0; k < n; ++k) {
                    double aki = a[k * n + i];
                    double akj = a[k * n + j];
                    a[k * n + i] = c * aki - s * akj;
                    a[k * n + j] = s * aki + c * akj;
                }
            }
        }
    }
    throw std::runtime_error("jacobi sweep limit reached without convergence");
}

std::vector<double> symmetric_spectrum(const AlgebraicGraph& g, std::uint64_t cap) {
    if (g.kind() != GraphKind::sum_product) {
        throw invalid_input("dense spectrum is for the sum-product graph");
    }
    if (g.n() > cap) throw cap_exceeded("graph exceeds the dense-solver cap");
    const std::size_t n = static_cast<std::size_t>(g.n());
    std::vector<double> a(n * n, 0.0);
    std::vector<std::uint64_t> nb;
    nb.reserve(g.degree());
    for (std::uint64_t v = 0; v < n; ++v) {
        nb.clear();
        g.out_neighbors(v, nb);
        for (std::uint64_t w : nb) a[v * n + w] = 1.0;
    }
    // adjacency must come out symmetric
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (a[i * n + j] != a[j * n + i]) {
                throw std::runtime_error("sum-product adjacency not symmetric");
            }
        }
    }
    return jacobi_eigenvalues(a, n, 1e-10 * static_cast<double>(n));
}

// --- subsets -------------------------------------------------------------------

std::uint64_t edge_count(const AlgebraicGraph& g, std::span<const std::uint64_t> B,
                         std::span<const std::uint64_t> C) {
    if (B.empty() || C.empty()) return 0;
    std::vector<std::uint8_t> inC(g.n(), 0);
    for (std::uint64_t w : C) {
        if (w >= g.n()) throw invalid_input("vertex id out of range");
        inC[w] = 1;
    }
    std::uint64_t count = 0;
    std::vector<std::uint64_t> nb;
    nb.reserve(g.degree());
    for (std::uint64_t u : B) {
        if (u >= g.n()) throw invalid_input("vertex id out of range");
        nb.clear();
        g.out_neighbors(u, nb);
        for (std::uint64_t w : nb) count += inC[w];
    }
    return count;
}

std::uint64_t loop_count(const AlgebraicGraph& g) {
    if (g.is_cayley()) {
        // vertex-transitive: loops per vertex = #{connection elements equal to 0},
        // so counting them at one vertex suffices
        std::vector<std::uint64_t> nb;
        g.out_neighbors(0, nb);
        std::uint64_t at_origin = 0;
        for (std::uint64_t w : nb) at_origin += (w == 0);
        return at_origin * g.n();
    }
    std::uint64_t loops = 0;
    std::vector<std::uint64_t> nb;
    for (std::uint64_t v = 0; v < g.n(); ++v) {
        nb.clear();
        g.out_neighbors(v, nb);
        for (std::uint64_t w : nb) loops += (w == v);
    }
    return loops;
}

void verify_regularity(const AlgebraicGraph& g) {
    std::vector<std::uint64_t> indeg(g.n(), 0);
    std::vector<std::uint64_t> nb;
    nb.reserve(g.degree());
    for (std::uint64_t v = 0; v < g.n(); ++v) {
        nb.clear();
        g.out_neighbors(v, nb);
        if (nb.size() != g.degree()) throw std::runtime_error("out-degree violation");
        std::vector<std::uint64_t> sorted = nb;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw std::runtime_error("duplicate out-neighbor");
        }
        for (std::uint64_t w : nb) indeg[w] += 1;
    }
    for (std::uint64_t v = 0; v < g.n(); ++v) {
        if (indeg[v] != g.degree()) throw std::runtime_error("in-degree violation");
    }
}

// --- certification ---------------------------------------------------------------

SpectralCert certify(const AlgebraicGraph& g, unsigned jobs) {
    SpectralCert cert;
    cert.kind = g.kind();
    cert.q = g.q();
    cert.d = g.base_d();
    cert.n = g.n();
    cert.degree = g.degree();
    cert.loops = loop_count(g);
    const double deg = static_cast<double>(g.degree());

    if (g.is_cayley()) {
        cert.method = "character_sum";
        auto spec = cayley_spectrum(g, jobs);
        const std::size_t n = spec.size();
        std::vector<double> re(n), im(n);
        for (std::size_t i = 0; i < n; ++i) {
            re[i] = spec[i].real();
            im[i] = spec[i].imag();
        }
        cert.trivial = re[0];  // m = 0 is the trivial character
        cert.lambda = std::sqrt(kernels::max_abs2(re.data() + 1, im.data() + 1, n - 1));
        cert.eig_sum = std::accumulate(re.begin(), re.end(), 0.0);
        cert.eig_sq_sum = kernels::dot(re.data(), re.data(), n) +
                          kernels::dot(im.data(), im.data(), n);
        const std::uint32_t D = g.form().d();
        cert.bound = std::sqrt(std::pow(static_cast<double>(g.q()), static_cast<double>(D)));
        cert.vacuous = cert.bound >= deg;
        cert.verdict = cert.lambda <= cert.bound * (1.0 + 1e-9);
    } else {
        cert.method = "dense_symmetric";
        auto eig = symmetric_spectrum(g);
        const std::size_t n = eig.size();
        cert.trivial = eig.back();
        double lo = std::abs(eig.front());
        double second = n >= 2 ? std::abs(eig[n - 2]) : 0.0;
        cert.lambda = std::max(lo, second);
        cert.eig_sum = std::accumulate(eig.begin(), eig.end(), 0.0);
        cert.eig_sq_sum = kernels::dot(eig.data(), eig.data(), n);
        DivisorStats ds = divisor_stats(g.q());
        cert.bound = std::sqrt(2.0 * static_cast<double>(ds.tau)) * deg /
                     std::pow(static_cast<double>(ds.gamma), g.base_d() / 2.0);
        cert.vacuous = cert.bound >= deg;
        cert.verdict = cert.lambda <= cert.bound + 1e-8;
    }
    return cert;
}

MixingReport mixing_check(const SpectralCert& cert, const AlgebraicGraph& g,
                          std::span<const std::uint64_t> B, std::span<const std::uint64_t> C) {
    MixingReport r;
    r.edges = edge_count(g, B, C);
    const double nb = static_cast<double>(B.size());
    const double nc = static_cast<double>(C.size());
    r.expected = static_cast<double>(g.degree()) * nb * nc / static_cast<double>(g.n());
    r.deviation = std::abs(static_cast<double>(r.edges) - r.expected);
    r.allowance = cert.lambda * std::sqrt(nb * nc);
    r.verdict = r.deviation <= r.allowance * (1.0 + 1e-9) + 1e-9;
    return r;
}

}  // namespace ffil
