#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seqfmeca/error_catalog.hpp"
#include "seqfmeca/model.hpp"
#include "seqfmeca/trace.hpp"

// Independent re-implementations used to check the library. They read the
// raw model only and never call the functions they are checking.
namespace seqfmeca::testing {

// Expected candidate ids for a whole model, in no particular order, built by
// walking every element of every message and applying the granularity rules
// one by one.
std::vector<std::string> oracle_candidate_ids(const SystemModel& model,
                                              const ActorProfile& profile);

// Candidate counts per error model (every error model has an entry).
std::map<ErrorModelId, std::size_t> oracle_counts(const SystemModel& model,
                                                  const ActorProfile& profile);

// Lexicographically smallest (by declaration index) ordering satisfying all
// precedence constraints, found by exhaustive permutation search.
std::vector<std::string> oracle_linearization(const Interaction& interaction);

// Whether `order` (a permutation of message ids) breaks at least one
// precedence constraint, checked pairwise.
bool breaks_precedence(const Interaction& interaction, const std::vector<std::string>& order);

// Classifies a mutant by diffing it against the nominal trace. nullopt when
// the difference matches no single error model.
std::optional<ErrorModelId> classify_deviation(const Interaction& interaction,
                                               const Trace& nominal, const Trace& mutant);

// Minimal RFC 4180 reader for round-trip checks.
std::vector<std::vector<std::string>> read_csv(std::string_view text);

}  // namespace seqfmeca::testing
