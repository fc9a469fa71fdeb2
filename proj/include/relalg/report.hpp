#ifndef RELALG_REPORT_HPP
#define RELALG_REPORT_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace relalg {

  struct Field {
    std::string                                   key;
    std::variant<bool, std::int64_t, std::string> value;

    friend bool operator==(Field const&, Field const&) = default;
  };

  // Outcome of one command. Flags (bool fields) form the summary line of the
  // text rendering; witnesses name what made a property fail.
  struct Report {
    std::string              command;
    bool                     holds = false;
    std::vector<Field>       fields;
    std::vector<std::string> witnesses;

    Report& flag(std::string key, bool v);
    Report& set(std::string key, std::int64_t v);
    Report& set(std::string key, std::string v);

    friend bool operator==(Report const&, Report const&) = default;
  };

  // "RA ✓ symmetric ✓ integral ✓", then "key: value" lines and witnesses.
  std::string render_text(Report const& r);
  // One JSON object; parse_json(render_json(r)) == r.
  std::string render_json(Report const& r);
  Report      parse_json(std::string const& text);

}  // namespace relalg

#endif  // RELALG_REPORT_HPP
