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

#include "lipdisc/json_io.h"

#include <fstream>
#include <memory>
#include <sstream>

#include "lipdisc/error.h"

namespace lipdisc::io {
namespace {

[[noreturn]] void parse_error(const std::string& what) {
  throw Error(ErrorKind::kParse, what);
}

template <typename T>
T get(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    parse_error(std::string("missing field '") + key + "'");
  }
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    parse_error(std::string("field '") + key + "': " + e.what());
  }
}

std::vector<int> to_one_based(const std::vector<int>& v) {
  std::vector<int> out(v);
  for (int& x : out) ++x;
  return out;
}

std::vector<int> from_one_based(const std::vector<int>& v, int limit,
                                const char* what) {
  std::vector<int> out;
  out.reserve(v.size());
  for (int x : v) {
    if (x < 1 || x > limit) {
      throw Error(ErrorKind::kIndexOutOfRange,
                  std::string(what) + " index " + std::to_string(x) +
                      " outside [1," + std::to_string(limit) + "]");
    }
    out.push_back(x - 1);
  }
  return out;
}

}  // namespace

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    parse_error("'" + path + "': " + e.what());
  }
}

void write_file(const std::string& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorKind::kInvalidArgument, "cannot write '" + path + "'");
  }
  out << doc.dump(2) << '\n';
}

Json subset_to_json(Subset s) { return to_one_based(s.elements()); }

Subset subset_from_json(const Json& doc, int m) {
  try {
    return Subset::of(from_one_based(doc.get<std::vector<int>>(), m, "element"));
  } catch (const nlohmann::json::exception& e) {
    parse_error(std::string("element list: ") + e.what());
  }
}

Json to_json(const SetFunction& f) {
  Json doc;
  doc["kind"] = std::string(f.kind_name());
  const FunctionKind& kind = f.kind();
  if (const auto* a = std::get_if<Additive>(&kind)) {
    doc["coefficients"] = a->coefficients;
  } else if (const auto* v = std::get_if<LinfVectorSum>(&kind)) {
    doc["vectors"] = v->vectors;
  } else if (const auto* c = std::get_if<Coverage>(&kind)) {
    doc["universe"] = c->universe;
    Json covers = Json::array();
    for (const auto& cover : c->covers) covers.push_back(to_one_based(cover));
    doc["covers"] = covers;
  } else if (const auto* b = std::get_if<BudgetedAdditive>(&kind)) {
    doc["coefficients"] = b->coefficients;
    doc["budget"] = b->budget;
  } else if (const auto* d = std::get_if<DistToMonotoneUpset>(&kind)) {
    const auto* gen = dynamic_cast<const GeneratedUpset*>(d->upset.get());
    if (gen == nullptr) {
      throw Error(ErrorKind::kInvalidArgument,
                  "only generator-based upsets can be serialized");
    }
    Json gens = Json::array();
    for (Subset g : gen->generators()) gens.push_back(subset_to_json(g));
    doc["generators"] = gens;
  } else if (const auto* t = std::get_if<Tabulated>(&kind)) {
    doc["values"] = t->values;
  }
  if (f.output_scale() != 1.0) doc["scale"] = f.output_scale();
  doc["lipschitz"] = f.declared_lipschitz();
  if (f.declared_relevant()) {
    doc["relevant"] = subset_to_json(*f.declared_relevant());
  }
  return doc;
}

SetFunction function_from_json(const Json& doc, int m) {
  const KindTag tag = kind_from_name(get<std::string>(doc, "kind"));
  FunctionKind kind;
  switch (tag) {
    case KindTag::kAdditive:
      kind = Additive{get<std::vector<double>>(doc, "coefficients")};
      break;
    case KindTag::kLinfVectorSum:
      kind = LinfVectorSum{get<std::vector<std::vector<double>>>(doc, "vectors")};
      break;
    case KindTag::kCoverage: {
      Coverage c;
      c.universe = get<int>(doc, "universe");
      for (const auto& cover : get<std::vector<std::vector<int>>>(doc, "covers")) {
        c.covers.push_back(from_one_based(cover, c.universe, "universe item"));
      }
      kind = std::move(c);
      break;
    }
    case KindTag::kBudgetedAdditive:
      kind = BudgetedAdditive{get<std::vector<double>>(doc, "coefficients"),
                              get<double>(doc, "budget")};
      break;
    case KindTag::kDistToMonotoneUpset: {
      std::vector<Subset> gens;
      for (const auto& g : get<std::vector<std::vector<int>>>(doc, "generators")) {
        gens.push_back(Subset::of(from_one_based(g, m, "generator element")));
      }
      kind = DistToMonotoneUpset{
          std::make_shared<GeneratedUpset>(m, std::move(gens))};
      break;
    }
    case KindTag::kTabulated:
      kind = Tabulated{get<std::vector<double>>(doc, "values")};
      break;
  }
  const double lipschitz = doc.contains("lipschitz") ? get<double>(doc, "lipschitz") : 1.0;
  std::optional<Subset> relevant;
  if (doc.contains("relevant")) relevant = subset_from_json(doc.at("relevant"), m);
  SetFunction f(m, std::move(kind), lipschitz, relevant);
  if (doc.contains("scale")) {
    const double scale = get<double>(doc, "scale");
    if (scale <= 0.0) parse_error("scale must be > 0");
    f = f.divided_by(1.0 / scale, lipschitz);
  }
  return f;
}

Json to_json(const Family& family) {
  Json fs = Json::array();
  for (const SetFunction& f : family.functions()) fs.push_back(to_json(f));
  return Json{{"m", family.m()}, {"functions", fs}};
}

Family family_from_json(const Json& doc) {
  const int m = get<int>(doc, "m");
  const GroundSet ground(m);
  std::vector<SetFunction> fs;
  for (const Json& f : get<Json>(doc, "functions")) {
    fs.push_back(function_from_json(f, m));
  }
  return Family(ground, std::move(fs));
}

Json to_json(const UtilityProfile& profile) {
  Json us = Json::array();
  for (const SetFunction& u : profile.utilities()) us.push_back(to_json(u));
  return Json{{"m", profile.m()}, {"utilities", us}};
}

UtilityProfile profile_from_json(const Json& doc) {
  const int m = get<int>(doc, "m");
  const GroundSet goods(m);
  std::vector<SetFunction> us;
  for (const Json& u : get<Json>(doc, "utilities")) {
    us.push_back(function_from_json(u, m));
  }
  return UtilityProfile(goods, std::move(us));
}

Json to_json(const CutProfile& profile) {
  return Json{{"k", profile.k},
              {"cuts", profile.cuts},
              {"labels", to_one_based(profile.labels)}};
}

CutProfile cut_profile_from_json(const Json& doc) {
  CutProfile p;
  p.k = get<int>(doc, "k");
  p.cuts = get<std::vector<double>>(doc, "cuts");
  p.labels = from_one_based(get<std::vector<int>>(doc, "labels"), p.k, "label");
  p.validate();
  return p;
}

Json to_json(const FractionalColoring& coloring) {
  Json rows = Json::array();
  for (int g = 0; g < coloring.m(); ++g) {
    rows.push_back(std::vector<double>(coloring.row(g).begin(),
                                       coloring.row(g).end()));
  }
  return Json{{"k", coloring.k()}, {"weights", rows}};
}

FractionalColoring fractional_from_json(const Json& doc) {
  const int k = get<int>(doc, "k");
  const auto rows = get<std::vector<std::vector<double>>>(doc, "weights");
  std::vector<double> w;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != k) parse_error("weight rows need k entries");
    w.insert(w.end(), row.begin(), row.end());
  }
  return FractionalColoring(static_cast<int>(rows.size()), k, std::move(w));
}

Json to_json(const Coloring& coloring) {
  return Json{{"k", coloring.k()}, {"chi", to_one_based(coloring.colors())}};
}

Coloring coloring_from_json(const Json& doc) {
  const int k = get<int>(doc, "k");
  return Coloring(k, from_one_based(get<std::vector<int>>(doc, "chi"), k, "color"));
}

Json to_json(const HalvingCertificate& cert) {
  Json agents = Json::array();
  for (const AgentRemovals& a : cert.agents) {
    agents.push_back(Json{{"R1", subset_to_json(a.r1)}, {"R2", subset_to_json(a.r2)}});
  }
  return Json{{"c", cert.c},
              {"A1", subset_to_json(cert.a1)},
              {"A2", subset_to_json(cert.a2)},
              {"agents", agents}};
}

HalvingCertificate certificate_from_json(const Json& doc) {
  HalvingCertificate cert;
  cert.c = get<int>(doc, "c");
  cert.a1 = subset_from_json(get<Json>(doc, "A1"), kMaxGroundSize);
  cert.a2 = subset_from_json(get<Json>(doc, "A2"), kMaxGroundSize);
  for (const Json& a : get<Json>(doc, "agents")) {
    cert.agents.push_back(AgentRemovals{
        subset_from_json(get<Json>(a, "R1"), kMaxGroundSize),
        subset_from_json(get<Json>(a, "R2"), kMaxGroundSize)});
  }
  return cert;
}

Subset partition_from_json(const Json& doc, int m) {
  if (doc.contains("A1")) return subset_from_json(doc.at("A1"), m);
  const Coloring coloring = coloring_from_json(doc);
  if (coloring.k() != 2 || coloring.m() != m) {
    parse_error("partition coloring must be a 2-coloring of the goods");
  }
  return coloring.color_class(0);
}

std::vector<int> groups_from_json(const Json& doc) {
  return from_one_based(get<std::vector<int>>(doc, "groups"), 2, "group");
}

Json to_json(const FractionalReport& r) {
  return Json{{"epsilon", r.epsilon},
              {"fractional_count", r.fractional_count},
              {"iterations", r.iterations},
              {"method", std::string(method_name(r.method))},
              {"success", r.success}};
}

Json to_json(const RoundingReport& r) {
  return Json{{"trials_used", r.trials_used},
              {"achieved_disc", r.achieved_disc},
              {"bound_2t", r.bound_2t},
              {"frac_eps", r.frac_eps},
              {"accepted", r.accepted}};
}

Json to_json(const SparseReport& r) {
  return Json{{"t", r.t},
              {"c", r.c},
              {"kept", r.kept},
              {"disc", r.disc},
              {"inner_disc", r.inner_disc},
              {"inner_bound", r.inner_bound},
              {"decomposition_bound", r.decomposition_bound}};
}

}  // namespace lipdisc::io
