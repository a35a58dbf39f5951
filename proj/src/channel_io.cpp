#include "macwt/channel_io.hpp"

#include <fstream>

namespace macwt {

namespace {

double param(const nlohmann::json& params, const std::string& key) {
  if (!params.contains(key) || !params[key].is_number())
    throw ConfigParseError("builder parameter '" + key +
                           "' missing or not a number");
  return params[key].get<double>();
}

}  // namespace

MacWiretapChannel channel_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigParseError("channel must be an object");
  if (doc.contains("builder")) {
    const std::string name = doc["builder"].get<std::string>();
    const nlohmann::json params =
        doc.contains("params") ? doc["params"] : nlohmann::json::object();
    if (name == "adder_bsc")
      return adder_bsc_channel(param(params, "p_main"), param(params, "p_eve"));
    throw ConfigParseError("unknown channel builder '" + name + "'");
  }
  for (const char* key : {"x1_size", "x2_size", "y_size", "z_size"}) {
    if (!doc.contains(key) || !doc[key].is_number_integer())
      throw ConfigParseError(std::string("channel field '") + key +
                             "' missing or not an integer");
  }
  if (!doc.contains("transition") || !doc["transition"].is_array())
    throw ConfigParseError("channel field 'transition' missing or not an array");
  std::vector<double> entries;
  entries.reserve(doc["transition"].size());
  for (const auto& e : doc["transition"]) {
    if (!e.is_number())
      throw ConfigParseError("transition entries must be numbers");
    entries.push_back(e.get<double>());
  }
  return MacWiretapChannel::make(doc["x1_size"].get<int>(),
                                 doc["x2_size"].get<int>(),
                                 doc["y_size"].get<int>(),
                                 doc["z_size"].get<int>(), std::move(entries));
}

MacWiretapChannel load_channel_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open channel file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigParseError("channel file '" + path + "': " + e.what());
  }
  return channel_from_json(doc);
}

}  // namespace macwt
