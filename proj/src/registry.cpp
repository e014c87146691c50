#include "monadlaw/registry.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "monadlaw/error.hpp"

namespace monadlaw {

const std::vector<std::pair<const char*, const char*>>& embedded_law_files();

const char* expectation_name(Expectation e) {
  switch (e) {
    case Expectation::Holds:
      return "holds";
    case Expectation::Refuted:
      return "refuted";
    case Expectation::ReportOnly:
      return "report-only";
  }
  return "?";
}

Expectation parse_expectation(std::string_view text) {
  if (text == "holds") return Expectation::Holds;
  if (text == "refuted") return Expectation::Refuted;
  if (text == "report-only") return Expectation::ReportOnly;
  throw ConfigError("unknown expectation '" + std::string(text) + "' (holds, refuted, report-only)");
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t p = s.find(sep, start);
    std::string item = trim(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start));
    if (!item.empty()) out.push_back(item);
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

}  // namespace

std::map<std::string, FinType> parse_type_assignment(std::string_view text) {
  std::map<std::string, FinType> out;
  for (const std::string& item : split(text, ',')) {
    std::size_t eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("type assignment '" + item + "' is not NAME=SIZE");
    std::string name = trim(std::string_view(item).substr(0, eq));
    std::string value = trim(std::string_view(item).substr(eq + 1));
    if (name.empty()) throw ConfigError("type assignment '" + item + "' has no name");
    if (value == "Unit") {
      out[name] = FinType::unit();
      continue;
    }
    std::uint32_t n = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
    if (ec != std::errc() || ptr != value.data() + value.size() || n == 0)
      throw ConfigError("type " + name + ": size must be a positive integer or Unit, got '" + value + "'");
    out[name] = FinType::enumeration(n);
  }
  return out;
}

Registry Registry::builtin() {
  // Effect families first, the generic monad laws last.
  static const char* const order[] = {"exception.law", "reader.law", "writer.law", "state.law", "monad.law"};
  Registry r;
  const auto& files = embedded_law_files();
  std::set<std::string> done;
  for (const char* want : order)
    for (const auto& [name, text] : files)
      if (std::string_view(name) == want && done.insert(name).second) r.load_text(text, name);
  for (const auto& [name, text] : files)
    if (done.insert(name).second) r.load_text(text, name);
  return r;
}

void Registry::load_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw ConfigError("laws directory not found: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".law") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    std::ifstream in(f);
    std::stringstream ss;
    ss << in.rdbuf();
    load_text(ss.str(), f.string());
  }
}

void Registry::load_text(std::string_view text, const std::string& origin) {
  LawFile file;
  try {
    file = parse_law_file(text);
  } catch (const SyntaxError& e) {
    throw SyntaxError(origin + ": " + e.what(), e.line, e.column);
  }
  auto where = [&](const SrcPos& p) { return origin + ":" + std::to_string(p.line); };

  std::map<std::string, const LawExpr*> fresh;
  for (const LawExpr& l : file.laws) {
    if (laws_.count(l.name) || fresh.count(l.name))
      throw ConfigError(where(l.pos) + ": duplicate law " + l.name);
    fresh[l.name] = &l;
  }
  std::set<std::string> placed;
  for (const SuiteDecl& s : file.suites) {
    for (const SuiteInfo& old : suites_)
      if (old.name == s.name) throw ConfigError(where(s.pos) + ": duplicate suite " + s.name);
    SuiteInfo info;
    info.name = s.name;
    info.origin = origin;
    auto eff = s.attrs.find("effect");
    if (eff == s.attrs.end()) throw ConfigError(where(s.pos) + ": suite " + s.name + " has no @effect");
    auto effect = parse_effect(eff->second);
    if (!effect) throw ConfigError(where(s.pos) + ": unknown effect '" + eff->second + "'");
    info.effect = *effect;
    if (auto st = s.attrs.find("stacks"); st != s.attrs.end()) {
      info.stacks = split(st->second, ';');
      for (const std::string& t : info.stacks) parse_stack(t);
    }
    if (auto c = s.attrs.find("cite"); c != s.attrs.end()) info.citation = c->second;
    for (const std::string& name : s.laws) {
      auto it = fresh.find(name);
      if (it == fresh.end()) throw ConfigError(where(s.pos) + ": suite " + s.name + " lists unknown law " + name);
      if (!placed.insert(name).second)
        throw ConfigError(where(s.pos) + ": law " + name + " is listed by more than one suite");
      const LawExpr& l = *it->second;
      LawEntry e;
      e.name = l.name;
      e.suite = s.name;
      e.law = l;
      e.law.attrs.clear();
      e.source = print_law(e.law);
      e.effect = info.effect;
      e.origin = origin;
      e.citation = info.citation;
      if (auto c = l.attrs.find("cite"); c != l.attrs.end()) e.citation = c->second;
      if (auto x = l.attrs.find("expect"); x != l.attrs.end()) e.expectation = parse_expectation(x->second);
      if (auto t = l.attrs.find("types"); t != l.attrs.end()) e.types = parse_type_assignment(t->second);
      info.laws.push_back(name);
      laws_.emplace(name, std::move(e));
    }
    suites_.push_back(std::move(info));
  }
  for (const LawExpr& l : file.laws)
    if (!placed.count(l.name)) throw ConfigError(where(l.pos) + ": law " + l.name + " is not in any suite");
}

const LawEntry* Registry::find(const std::string& name) const {
  auto it = laws_.find(name);
  return it == laws_.end() ? nullptr : &it->second;
}

const LawEntry& Registry::lookup(const std::string& name) const {
  if (const LawEntry* e = find(name)) return *e;
  std::vector<std::string> pool;
  for (const auto& [n, e] : laws_) pool.push_back(n);
  throw UnknownName("law", name, near_matches(name, pool));
}

const SuiteInfo& Registry::suite(const std::string& name) const {
  for (const SuiteInfo& s : suites_)
    if (s.name == name) return s;
  std::vector<std::string> pool;
  for (const SuiteInfo& s : suites_) pool.push_back(s.name);
  throw UnknownName("suite", name, near_matches(name, pool));
}

std::vector<const LawEntry*> Registry::laws(const std::string& suite_name) const {
  std::vector<const LawEntry*> out;
  for (const SuiteInfo& s : suites_) {
    if (!suite_name.empty() && s.name != suite_name) continue;
    for (const std::string& n : s.laws) out.push_back(&laws_.at(n));
  }
  if (!suite_name.empty() && out.empty()) suite(suite_name);
  return out;
}

std::vector<std::string> Registry::near_matches(const std::string& name,
                                                const std::vector<std::string>& pool) const {
  std::string key = lower(name);
  std::vector<std::pair<std::size_t, std::string>> close, all;
  for (const std::string& cand : pool) {
    std::string c = lower(cand);
    std::size_t d = edit_distance(key, c);
    bool partial = key.size() >= 3 && (c.find(key) != std::string::npos || key.find(c) != std::string::npos);
    all.emplace_back(d, cand);
    if (d <= std::max<std::size_t>(2, key.size() / 3) || partial) close.emplace_back(d, cand);
  }
  // Without a close match, offer the nearest few names anyway.
  std::vector<std::pair<std::size_t, std::string>>& pick = close.empty() ? all : close;
  std::sort(pick.begin(), pick.end());
  std::vector<std::string> out;
  for (std::size_t i = 0; i < pick.size() && i < (close.empty() ? 3u : 5u); ++i) out.push_back(pick[i].second);
  return out;
}

}  // namespace monadlaw
