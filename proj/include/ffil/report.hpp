#pragma once

#include <complex>
#include <string>
#include <vector>

#include "ffil/experiments.hpp"
#include "ffil/spectral.hpp"

// JSON and CSV rendering for every report type. All output is deterministic:
// keys are emitted sorted and doubles use shortest round-trip formatting, so a
// fixed config + seed yields byte-identical bytes.

namespace ffil::report {

std::string to_json(const SpectralCert& cert);
std::string to_json(const IncidenceReport& r);
std::string to_json(const PinnedReport& r);
std::string to_json(const TripleReport& r);
std::string to_json(const T2Report& r);
std::string to_json(const DdSubsetReport& r);
std::string to_json(const RandomTrialsReport& r);
std::string to_json(const MixingReport& r);

std::string csv_header(const IncidenceReport&);
std::string csv_row(const IncidenceReport& r);
std::string csv_header(const PinnedReport&);
std::string csv_row(const PinnedReport& r);
std::string csv_header(const TripleReport&);
std::string csv_row(const TripleReport& r);
std::string csv_header(const T2Report&);
std::string csv_row(const T2Report& r);
std::string csv_header(const RandomTrialsReport&);
std::string csv_row(const RandomTrialsReport& r);
std::string csv_header(const MixingReport&);
std::string csv_row(const MixingReport& r);

// one row per eigenvalue: re,im,modulus
std::string spectrum_csv(const std::vector<std::complex<double>>& eig);
std::string spectrum_csv(const std::vector<double>& eig);

// gnuplot script plotting eigenvalue moduli from a spectrum CSV
std::string gnuplot_script(const std::string& csv_path, const std::string& title);

}  // namespace ffil::report
