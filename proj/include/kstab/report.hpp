#pragma once

#include <string>

#include "kstab/envelope.hpp"
#include "kstab/futaki.hpp"
#include "kstab/problem.hpp"
#include "kstab/stability.hpp"

namespace kstab {

// Machine-readable blocks. Rationals are "p/q" strings; floating point
// only appears where the quantity is floating point (soliton, W).
Json polytope_json(const Polytope& p);
Json chamber_json(const ChamberPolytope& cp);
Json extension_json(const ExtensionResult& e);
Json colours_json(const std::vector<ColourDiagnostic>& c);
Json context_json(const FutakiContext& ctx);
Json extremal_json(const FutakiContext& ctx);
Json theta_json(const ThetaFunction& t);
Json fano_json(const FanoCheck& f);
Json terms_json(const FutakiTerms& t);
Json root_json(const RealRoot& r);
Json piecewise_json(const PiecewisePolynomial1D& f);
Json verdict_json(const Verdict& v);
Json stability_json(const StabilityReport& s);
Json scan_json(const ScanResult& s);
Json degeneration_json(const DegenerationData& d);
Json optimal_json(const OptimalObjective& o);
Json soliton_json(const SolitonResult& s);
Json envelope_json(const EnvelopeResult& e);
Json ma_json(const MACheck& m);
Json crease_json(const CreaseResult& c);
Json error_json(const Error& e);

// Short human-readable summaries.
std::string context_text(const FutakiContext& ctx);
std::string stability_text(const StabilityReport& s, const ScanResult* scan);
std::string degeneration_text(const DegenerationData& d);
std::string soliton_text(const SolitonResult& s);
std::string envelope_text(const EnvelopeResult& e);
std::string crease_text(const CreaseResult& c);
std::string extension_text(const ExtensionResult& e);

}  // namespace kstab
