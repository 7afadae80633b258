#include "ffil/report.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace ffil::report {

using nlohmann::json;

namespace {

// shortest round-trip double via nlohmann's own serializer
std::string num(double v) { return json(v).dump(); }

}  // namespace

std::string to_json(const SpectralCert& cert) {
    json j;
    j["kind"] = std::string(graph_kind_name(cert.kind));
    j["q"] = cert.q;
    j["d"] = cert.d;
    j["n"] = cert.n;
    j["degree"] = cert.degree;
    j["lambda"] = cert.lambda;
    j["bound"] = cert.bound;
    j["verdict"] = cert.verdict;
    j["vacuous"] = cert.vacuous;
    j["method"] = cert.method;
    j["trivial"] = cert.trivial;
    j["loops"] = cert.loops;
    j["eig_sum"] = cert.eig_sum;
    j["eig_sq_sum"] = cert.eig_sq_sum;
    return j.dump();
}

std::string to_json(const IncidenceReport& r) {
    json j;
    j["count"] = r.count;
    j["main"] = r.main;
    j["error_bound"] = r.error_bound;
    j["slack"] = r.slack;
    j["verdict"] = r.verdict;
    j["p_size"] = r.p_size;
    j["s_size"] = r.s_size;
    return j.dump();
}

std::string to_json(const PinnedReport& r) {
    json j;
    j["c"] = r.c;
    j["threshold_size"] = r.threshold_size;
    j["good_pins"] = r.good_pins;
    j["verdict"] = r.verdict;
    j["applicable"] = r.applicable;
    j["average"] = r.average;
    j["average_ok"] = r.average_ok;
    j["e_size"] = r.e_size;
    return j.dump();
}

std::string to_json(const TripleReport& r) {
    json j;
    j["iso"] = r.iso;
    j["t1"] = r.t1;
    j["z"] = r.z;
    j["identity_ok"] = r.identity_ok;
    j["bound_ok"] = r.bound_ok;
    j["main"] = r.main;
    j["bound"] = r.bound;
    j["e_size"] = r.e_size;
    return j.dump();
}

std::string to_json(const T2Report& r) {
    json j;
    j["t2"] = r.t2;
    j["main"] = r.main;
    j["bound"] = r.bound;
    j["deviation"] = r.deviation;
    j["verdict"] = r.verdict;
    j["e_size"] = r.e_size;
    return j.dump();
}

std::string to_json(const DdSubsetReport& r) {
    json j;
    json pts = json::array();
    for (const Point& p : r.subset) {
        json coords = json::array();
        for (Felem c : p) coords.push_back(c);
        pts.push_back(coords);
    }
    j["subset"] = pts;
    j["method"] = r.method;
    j["valid"] = r.valid;
    j["size"] = r.subset.size();
    j["size_envelope"] = json::array({r.envelope_lo, r.envelope_hi});
    j["within_envelope"] = r.within_envelope;
    return j.dump();
}

std::string to_json(const RandomTrialsReport& r) {
    json j;
    j["t"] = r.t;
    j["trials"] = r.trials;
    j["zero_count"] = r.zero_count;
    j["zero_frequency"] = r.zero_frequency;
    j["mean_incidences"] = r.mean_incidences;
    j["seed"] = r.seed;
    return j.dump();
}

std::string to_json(const MixingReport& r) {
    json j;
    j["edges"] = r.edges;
    j["expected"] = r.expected;
    j["deviation"] = r.deviation;
    j["allowance"] = r.allowance;
    j["verdict"] = r.verdict;
    return j.dump();
}

std::string csv_header(const IncidenceReport&) {
    return "count,main,error_bound,slack,verdict,p_size,s_size";
}
std::string csv_row(const IncidenceReport& r) {
    std::ostringstream os;
    os << r.count << ',' << num(r.main) << ',' << num(r.error_bound) << ',' << num(r.slack)
       << ',' << (r.verdict ? 1 : 0) << ',' << r.p_size << ',' << r.s_size;
    return os.str();
}

std::string csv_header(const PinnedReport&) {
    return "c,threshold_size,good_pins,verdict,applicable,average,average_ok,e_size";
}
std::string csv_row(const PinnedReport& r) {
    std::ostringstream os;
    os << num(r.c) << ',' << num(r.threshold_size) << ',' << r.good_pins << ','
       << (r.verdict ? 1 : 0) << ',' << (r.applicable ? 1 : 0) << ',' << num(r.average) << ','
       << (r.average_ok ? 1 : 0) << ',' << r.e_size;
    return os.str();
}

std::string csv_header(const TripleReport&) {
    return "iso,t1,z,identity_ok,bound_ok,main,bound,e_size";
}
std::string csv_row(const TripleReport& r) {
    std::ostringstream os;
    os << r.iso << ',' << r.t1 << ',' << r.z << ',' << (r.identity_ok ? 1 : 0) << ','
       << (r.bound_ok ? 1 : 0) << ',' << num(r.main) << ',' << num(r.bound) << ',' << r.e_size;
    return os.str();
}

std::string csv_header(const T2Report&) {
    return "t2,main,bound,deviation,verdict,e_size";
}
std::string csv_row(const T2Report& r) {
    std::ostringstream os;
    os << r.t2 << ',' << num(r.main) << ',' << num(r.bound) << ',' << num(r.deviation) << ','
       << (r.verdict ? 1 : 0) << ',' << r.e_size;
    return os.str();
}

std::string csv_header(const RandomTrialsReport&) {
    return "t,trials,zero_count,zero_frequency,mean_incidences,seed";
}
std::string csv_row(const RandomTrialsReport& r) {
    std::ostringstream os;
    os << r.t << ',' << r.trials << ',' << r.zero_count << ',' << num(r.zero_frequency) << ','
       << num(r.mean_incidences) << ',' << r.seed;
    return os.str();
}

std::string csv_header(const MixingReport&) {
    return "edges,expected,deviation,allowance,verdict";
}
std::string csv_row(const MixingReport& r) {
    std::ostringstream os;
    os << r.edges << ',' << num(r.expected) << ',' << num(r.deviation) << ','
       << num(r.allowance) << ',' << (r.verdict ? 1 : 0);
    return os.str();
}

std::string spectrum_csv(const std::vector<std::complex<double>>& eig) {
    std::ostringstream os;
    os << "re,im,modulus\n";
    for (const auto& z : eig) {
        os << num(z.real()) << ',' << num(z.imag()) << ',' << num(std::abs(z)) << '\n';
    }
    return os.str();
}

std::string spectrum_csv(const std::vector<double>& eig) {
    std::ostringstream os;
    os << "re,im,modulus\n";
    for (double v : eig) {
        os << num(v) << ",0," << num(std::abs(v)) << '\n';
    }
    return os.str();
}

std::string gnuplot_script(const std::string& csv_path, const std::string& title) {
    std::ostringstream os;
    os << "set datafile separator ','\n"
       << "set title '" << title << "'\n"
       << "set xlabel 'eigenvalue index'\n"
       << "set ylabel 'modulus'\n"
       << "plot '" << csv_path << "' every ::1 using 3 with points pt 7 ps 0.5 title '|lambda|'\n";
    return os.str();
}

}  // namespace ffil::report
