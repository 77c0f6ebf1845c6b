#include "sqfw/report.hpp"

#include <algorithm>
#include <chrono>
#include <exception>

namespace sqfw {

std::string to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::observational:
      return "observational";
  }
  return "unknown";
}

void Report::append(const Report& other) {
  checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
}

namespace {
using Clock = std::chrono::steady_clock;
double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}
}  // namespace

void Report::run(const std::string& id, const std::string& topic,
                 const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Check c{id, topic, Status::fail, {}, 0.0};
  try {
    auto [ok, details] = body();
    c.status = ok ? Status::pass : Status::fail;
    c.details = std::move(details);
  } catch (const std::exception& e) {
    c.details = std::string("exception: ") + e.what();
  }
  c.wall_ms = ms_since(t0);
  add(std::move(c));
}

void Report::observe(const std::string& id, const std::string& topic,
                     const std::function<std::string()>& body) {
  const auto t0 = Clock::now();
  Check c{id, topic, Status::observational, {}, 0.0};
  try {
    c.details = body();
  } catch (const std::exception& e) {
    c.details = std::string("exception: ") + e.what();
  }
  c.wall_ms = ms_since(t0);
  add(std::move(c));
}

bool Report::passed() const { return count(Status::fail) == 0; }

std::size_t Report::count(Status s) const {
  return static_cast<std::size_t>(
      std::count_if(checks_.begin(), checks_.end(), [s](const Check& c) { return c.status == s; }));
}

void Report::sort_by_id() {
  std::stable_sort(checks_.begin(), checks_.end(),
                   [](const Check& a, const Check& b) { return a.id < b.id; });
}

void Report::write_jsonl(std::ostream& out) const {
  for (const auto& c : checks_) out << to_json(c).dump() << "\n";
}

void Report::write_summary(std::ostream& out) const {
  out << "summary: " << count(Status::pass) << " pass, " << count(Status::fail) << " fail, "
      << count(Status::observational) << " observational\n";
  for (const auto& c : checks_) {
    if (c.status == Status::fail) out << "  FAIL " << c.id << ": " << c.details << "\n";
  }
}

nlohmann::json to_json(const Check& c) {
  return {{"claim", c.id},
          {"topic", c.topic},
          {"status", to_string(c.status)},
          {"details", c.details},
          {"wall_ms", c.wall_ms}};
}

nlohmann::json to_json(const Verdict& v, const std::string& subject) {
  nlohmann::json j{{"test", v.test}, {"subject", subject}, {"pass", v.pass}};
  if (v.counterexample) {
    const auto& c = *v.counterexample;
    nlohmann::json cj{{"input", c.input.str()}, {"image", c.image.str()}};
    if (c.square) cj["square"] = {{"start", c.square->start}, {"period", c.square->period}};
    if (!c.note.empty()) cj["note"] = c.note;
    j["counterexample"] = cj;
  }
  if (!v.detail.empty()) j["detail"] = v.detail;
  return j;
}

}  // namespace sqfw
