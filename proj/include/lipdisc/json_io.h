// Copyright 2026 The lipdisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef LIPDISC_JSON_IO_H_
#define LIPDISC_JSON_IO_H_

#include <string>

#include "json.hpp"
#include "lipdisc/fairdiv.h"
#include "lipdisc/family.h"
#include "lipdisc/fractional.h"
#include "lipdisc/rounding.h"
#include "lipdisc/sparse.h"

// File formats. Elements, colors and universe items are 1-based in every
// document; docs/*.schema.json pins the field names.
namespace lipdisc::io {

using Json = nlohmann::json;

Json read_file(const std::string& path);   // throws kParse
void write_file(const std::string& path, const Json& doc);

Json to_json(const SetFunction& f);
SetFunction function_from_json(const Json& doc, int m);

// Instance: {"m": int, "functions": [...]}
Json to_json(const Family& family);
Family family_from_json(const Json& doc);

// Profile: {"m": int, "utilities": [...]} with the same function schema.
Json to_json(const UtilityProfile& profile);
UtilityProfile profile_from_json(const Json& doc);

// {"k": int, "cuts": [reals], "labels": [ints]}
Json to_json(const CutProfile& profile);
CutProfile cut_profile_from_json(const Json& doc);

// {"k": int, "weights": [[reals]]}
Json to_json(const FractionalColoring& coloring);
FractionalColoring fractional_from_json(const Json& doc);

// {"k": int, "chi": [ints]}
Json to_json(const Coloring& coloring);
Coloring coloring_from_json(const Json& doc);

// {"c", "A1", "A2", "agents": [{"R1", "R2"}]}
Json to_json(const HalvingCertificate& cert);
HalvingCertificate certificate_from_json(const Json& doc);

// Partition documents hold either "A1" (list of goods) or a 2-coloring.
Subset partition_from_json(const Json& doc, int m);

// {"groups": [1|2 per agent]} -> 0/1 per agent.
std::vector<int> groups_from_json(const Json& doc);

Json to_json(const FractionalReport& report);
Json to_json(const RoundingReport& report);
Json to_json(const SparseReport& report);

Json subset_to_json(Subset s);
Subset subset_from_json(const Json& doc, int m);

}  // namespace lipdisc::io

#endif  // LIPDISC_JSON_IO_H_
