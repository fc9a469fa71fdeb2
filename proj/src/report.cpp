#include "relalg/report.hpp"

#include "json.hpp"

#include "relalg/atom_set.hpp"

namespace relalg {

  Report& Report::flag(std::string key, bool v) {
    fields.push_back({std::move(key), v});
    return *this;
  }

  Report& Report::set(std::string key, std::int64_t v) {
    fields.push_back({std::move(key), v});
    return *this;
  }

  Report& Report::set(std::string key, std::string v) {
    fields.push_back({std::move(key), std::move(v)});
    return *this;
  }

  std::string render_text(Report const& r) {
    std::string flags;
    std::string rest;
    for (auto const& f : r.fields) {
      if (auto const* b = std::get_if<bool>(&f.value)) {
        flags += (flags.empty() ? "" : " ") + f.key + (*b ? " ✓" : " ✗");
      } else if (auto const* i = std::get_if<std::int64_t>(&f.value)) {
        rest += f.key + ": " + std::to_string(*i) + "\n";
      } else {
        rest += f.key + ": " + std::get<std::string>(f.value) + "\n";
      }
    }
    std::string out = flags.empty() ? "" : flags + "\n";
    out += rest;
    for (auto const& w : r.witnesses) {
      out += "witness: " + w + "\n";
    }
    return out;
  }

  std::string render_json(Report const& r) {
    nlohmann::ordered_json j;
    j["command"] = r.command;
    j["holds"]   = r.holds;
    auto fields  = nlohmann::ordered_json::array();
    for (auto const& f : r.fields) {
      nlohmann::ordered_json e;
      e["key"] = f.key;
      std::visit([&](auto const& v) { e["value"] = v; }, f.value);
      fields.push_back(std::move(e));
    }
    j["fields"]    = std::move(fields);
    j["witnesses"] = r.witnesses;
    return j.dump(2) + "\n";
  }

  Report parse_json(std::string const& text) {
    Report r;
    try {
      auto const j = nlohmann::json::parse(text);
      r.command    = j.at("command").get<std::string>();
      r.holds      = j.at("holds").get<bool>();
      for (auto const& e : j.at("fields")) {
        auto const& v = e.at("value");
        Field       f{e.at("key").get<std::string>(), false};
        if (v.is_boolean()) {
          f.value = v.get<bool>();
        } else if (v.is_number_integer()) {
          f.value = v.get<std::int64_t>();
        } else if (v.is_string()) {
          f.value = v.get<std::string>();
        } else {
          throw Error("report field '" + f.key + "' has an unsupported type");
        }
        r.fields.push_back(std::move(f));
      }
      r.witnesses = j.at("witnesses").get<std::vector<std::string>>();
    } catch (nlohmann::json::exception const& e) {
      throw Error(std::string("malformed report: ") + e.what());
    }
    return r;
  }

}  // namespace relalg
