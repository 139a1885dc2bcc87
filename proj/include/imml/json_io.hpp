#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "imml/calculi.hpp"
#include "imml/search.hpp"

namespace imml {

using json = nlohmann::ordered_json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ModelKind model_kind(const AnyModel& m);

// Model documents. Orders are given as pairs and closed reflexively and
// transitively on load. With `validate`, the kind's checker runs and a
// violation raises FormatError naming the failed check and a witness.
AnyModel model_from_json(const json& doc, bool validate = true);
json model_to_json(const AnyModel& m);
AnyModel load_model(const std::string& path, bool validate = true);
void save_json(const std::string& path, const json& doc);
json load_json(const std::string& path);

Derivation derivation_from_json(const json& doc, Dialect dialect);
json derivation_to_json(const Derivation& d);

json reports_to_json(const std::vector<CheckReport>& reports);
json search_result_to_json(const SearchResult& r);

}  // namespace imml
