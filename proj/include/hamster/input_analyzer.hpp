// SPDX-License-Identifier: Apache-2.0
//
// Structured-input detection: parsing/query API calls and string literals
// that look like SQL statements or paths to data files.
#pragma once

#include <vector>

#include "hamster/catalog.hpp"
#include "hamster/model.hpp"
#include "hamster/sequence_analyzer.hpp"

namespace hamster {

// Structured inputs evidenced in one linearized body. String literals passed
// directly to a recognized input API are covered by that ApiCall use and do
// not produce a second literal-based use. Results are deduplicated and
// ordered by source position.
std::vector<StructuredInputUse> detect_structured_inputs(const BodySequence& seq,
                                                         const FrameworkCatalog& catalog);

}  // namespace hamster
