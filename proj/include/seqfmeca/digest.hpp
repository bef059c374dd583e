#pragma once

#include <string>
#include <string_view>

#include "seqfmeca/model.hpp"

namespace seqfmeca {

// "sha256:<64 hex digits>"
std::string sha256_digest(std::string_view bytes);

// Digest of the canonical serialization, so formatting-only edits to a
// source file do not count as model drift.
std::string model_digest(const SystemModel& model);

}  // namespace seqfmeca
