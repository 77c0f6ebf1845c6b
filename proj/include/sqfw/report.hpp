// Line-delimited claim records shared by the catalog checks and verify-paper.

#ifndef SQFW_REPORT_HPP_
#define SQFW_REPORT_HPP_

#include <functional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sqfw/verify.hpp"

namespace sqfw {

enum class Status { pass, fail, observational };

std::string to_string(Status s);

struct Check {
  std::string id;
  std::string topic;
  Status status = Status::pass;
  std::string details;
  double wall_ms = 0.0;
};

// (passed, details)
using Outcome = std::pair<bool, std::string>;

class Report {
 public:
  void add(Check c) { checks_.push_back(std::move(c)); }
  void append(const Report& other);

  // Times `body`. Exceptions become failures.
  void run(const std::string& id, const std::string& topic, const std::function<Outcome()>& body);
  // Same, but never counts as failing.
  void observe(const std::string& id, const std::string& topic,
               const std::function<std::string()>& body);

  const std::vector<Check>& checks() const { return checks_; }
  bool passed() const;
  std::size_t count(Status s) const;

  void sort_by_id();
  void write_jsonl(std::ostream& out) const;
  void write_summary(std::ostream& out) const;

 private:
  std::vector<Check> checks_;
};

nlohmann::json to_json(const Check& c);
// {test, subject, pass, counterexample?}
nlohmann::json to_json(const Verdict& v, const std::string& subject);

}  // namespace sqfw

#endif  // SQFW_REPORT_HPP_
