#include <algorithm>
#include <cctype>
#include <charconv>

#include "seqfmeca/fmeca.hpp"

namespace seqfmeca {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view name(HarmSeverity s) {
  switch (s) {
    case HarmSeverity::kCatastrophic: return "catastrophic";
    case HarmSeverity::kSevere: return "severe";
    case HarmSeverity::kMajor: return "major";
    case HarmSeverity::kMinor: return "minor";
    case HarmSeverity::kNegligible: return "negligible";
  }
  return "negligible";
}

std::string display(HarmSeverity s) {
  return std::string(name(s)) + " (" + std::to_string(level(s)) + ")";
}

std::optional<HarmSeverity> parse_severity(std::string_view token) {
  const std::string t = lower(trim(token));
  if (t.size() == 1 && t[0] >= '1' && t[0] <= '5') {
    return static_cast<HarmSeverity>(t[0] - '0');
  }
  if (t == "sever") return HarmSeverity::kSevere;
  for (HarmSeverity s : kAllSeverities) {
    if (t == name(s)) return s;
  }
  return std::nullopt;
}

std::string_view name(Probability p) {
  switch (p) {
    case Probability::kFrequent: return "frequent";
    case Probability::kProbable: return "probable";
    case Probability::kOccasional: return "occasional";
    case Probability::kRare: return "rare";
    case Probability::kImpossible: return "impossible";
  }
  return "impossible";
}

std::string_view abbreviation(Probability p) {
  switch (p) {
    case Probability::kFrequent: return "F";
    case Probability::kProbable: return "P";
    case Probability::kOccasional: return "O";
    case Probability::kRare: return "R";
    case Probability::kImpossible: return "I";
  }
  return "I";
}

std::string display(Probability p) {
  return std::string(name(p)) + " (" + std::string(abbreviation(p)) + ")";
}

std::optional<Probability> parse_probability(std::string_view token) {
  const std::string t = lower(trim(token));
  for (Probability p : kAllProbabilities) {
    if (t == name(p) || t == lower(abbreviation(p))) return p;
  }
  return std::nullopt;
}

std::string_view name(RiskClass r) {
  switch (r) {
    case RiskClass::kIntolerable: return "intolerable";
    case RiskClass::kUndesirable: return "undesirable";
    case RiskClass::kTolerable: return "tolerable";
    case RiskClass::kAcceptable: return "acceptable";
  }
  return "acceptable";
}

std::optional<RiskClass> parse_risk_class(std::string_view token) {
  const std::string t = lower(trim(token));
  for (RiskClass r : kAllRiskClasses) {
    if (t == name(r)) return r;
  }
  return std::nullopt;
}

RiskMatrix RiskMatrix::default_matrix() {
  constexpr auto X = RiskClass::kIntolerable;
  constexpr auto U = RiskClass::kUndesirable;
  constexpr auto T = RiskClass::kTolerable;
  constexpr auto A = RiskClass::kAcceptable;
  RiskMatrix m;
  m.name = "default";
  //            F  P  O  R  I
  m.cells[0] = {X, X, X, U, A};  // catastrophic
  m.cells[1] = {X, X, U, T, A};  // severe
  m.cells[2] = {U, U, T, T, A};  // major
  m.cells[3] = {U, T, T, A, A};  // minor
  m.cells[4] = {T, T, A, A, A};  // negligible
  return m;
}

std::vector<Diagnostic> validate_matrix(const RiskMatrix& matrix) {
  std::vector<Diagnostic> out;
  auto fail = [&](std::string text) {
    Diagnostic d;
    d.code = std::string(code::kNonMonotoneMatrix);
    d.path = "matrix/" + matrix.name;
    d.text = std::move(text);
    out.push_back(std::move(d));
  };
  auto cell_name = [](HarmSeverity s, Probability p) {
    return "(" + std::to_string(level(s)) + ", " + std::string(abbreviation(p)) + ")";
  };
  for (HarmSeverity s : kAllSeverities) {
    if (matrix.at(s, Probability::kImpossible) != RiskClass::kAcceptable) {
      fail("cell " + cell_name(s, Probability::kImpossible) + " must be acceptable");
    }
  }
  // A larger RiskClass value is a better class; moving toward negligible or
  // impossible must never decrease it.
  for (std::size_t si = 0; si + 1 < kAllSeverities.size(); ++si) {
    for (Probability p : kAllProbabilities) {
      const HarmSeverity a = kAllSeverities[si];
      const HarmSeverity b = kAllSeverities[si + 1];
      if (matrix.at(b, p) < matrix.at(a, p)) {
        fail("cell " + cell_name(b, p) + " is worse than the more severe cell " +
             cell_name(a, p));
      }
    }
  }
  for (HarmSeverity s : kAllSeverities) {
    for (std::size_t pi = 0; pi + 1 < kAllProbabilities.size(); ++pi) {
      const Probability a = kAllProbabilities[pi];
      const Probability b = kAllProbabilities[pi + 1];
      if (matrix.at(s, b) < matrix.at(s, a)) {
        fail("cell " + cell_name(s, b) + " is worse than the more probable cell " +
             cell_name(s, a));
      }
    }
  }
  return out;
}

RiskClass risk_rank(HarmSeverity severity, Probability probability,
                    const RiskMatrix& matrix) {
  return matrix.at(severity, probability);
}

}  // namespace seqfmeca
