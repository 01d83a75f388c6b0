#pragma once

// Versioned JSON documents with named entities: parsing with source
// positions, canonical emission, and binding of names to ids.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "acc/acc.hpp"

namespace acc::io {

using json = nlohmann::ordered_json;

inline constexpr std::int64_t kFormatVersion = 1;

/// Byte offsets of parsed values, keyed by JSON pointer.
struct SourceMap {
  std::map<std::string, std::size_t> offsets;
  std::vector<std::size_t> line_starts{0};

  std::optional<std::pair<std::size_t, std::size_t>> line_col(const std::string& ptr) const {
    auto it = offsets.find(ptr);
    if (it == offsets.end()) return std::nullopt;
    return line_col_at(it->second);
  }

  std::pair<std::size_t, std::size_t> line_col_at(std::size_t offset) const {
    auto line = static_cast<std::size_t>(
        std::upper_bound(line_starts.begin(), line_starts.end(), offset) - line_starts.begin());
    return {line, offset - line_starts[line - 1] + 1};
  }

  std::string where(const std::string& ptr) const {
    std::string out = ptr.empty() ? "document root" : ptr;
    if (auto lc = line_col(ptr))
      out += " (line " + std::to_string(lc->first) + ", column " + std::to_string(lc->second) + ")";
    return out;
  }
};

struct BranchEntry {
  std::string name;
  std::string component;
  std::string point;
  bool operator==(const BranchEntry&) const = default;
};

struct MuEntry {
  std::string first;
  std::string second;
  std::int64_t value = 0;
  bool operator==(const MuEntry&) const = default;
};

struct AccSection {
  std::vector<std::string> components;
  std::vector<std::string> points;
  std::vector<BranchEntry> branches;
  std::vector<MuEntry> mu;
  bool operator==(const AccSection&) const = default;
};

struct StepEntry {
  std::string point;
  std::vector<std::vector<std::string>> clusters;
  std::vector<std::pair<std::string, std::int64_t>> nu;
  bool operator==(const StepEntry&) const = default;
};

struct PencilSection {
  std::vector<std::vector<std::string>> fibers;
  std::vector<std::pair<std::string, std::int64_t>> multiplicities;  // absent names mean 1
  bool operator==(const PencilSection&) const = default;
};

struct FamilySection {
  std::size_t dim = 0;
  std::vector<std::pair<std::string, RationalVector>> vectors;
  bool operator==(const FamilySection&) const = default;
};

struct Document {
  std::int64_t format_version = kFormatVersion;
  std::optional<AccSection> acc;
  std::optional<std::vector<StepEntry>> resolution;
  std::optional<PencilSection> pencil;
  std::optional<FamilySection> family;
  SourceMap source;  // empty for documents built in memory

  bool operator==(const Document& o) const {
    return format_version == o.format_version && acc == o.acc && resolution == o.resolution &&
           pencil == o.pencil && family == o.family;
  }
};

namespace detail {

inline std::string pointer_token(std::string_view key) {
  std::string out;
  for (char c : key) {
    if (c == '~')
      out += "~0";
    else if (c == '/')
      out += "~1";
    else
      out += c;
  }
  return out;
}

// Input iterator that publishes how many bytes the lexer has consumed.
class CountingIterator {
 public:
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  CountingIterator() = default;
  CountingIterator(const char* p, const char* base, std::size_t* sink)
      : p_(p), base_(base), sink_(sink) {}

  reference operator*() const { return *p_; }
  CountingIterator& operator++() {
    ++p_;
    if (sink_) *sink_ = static_cast<std::size_t>(p_ - base_);
    return *this;
  }
  CountingIterator operator++(int) {
    auto old = *this;
    ++*this;
    return old;
  }
  bool operator==(const CountingIterator& o) const { return p_ == o.p_; }
  bool operator!=(const CountingIterator& o) const { return p_ != o.p_; }

 private:
  const char* p_ = nullptr;
  const char* base_ = nullptr;
  std::size_t* sink_ = nullptr;
};

// DOM builder that records where every value ends and rejects duplicate keys.
class PositionedSax {
 public:
  using number_integer_t = json::number_integer_t;
  using number_unsigned_t = json::number_unsigned_t;
  using number_float_t = json::number_float_t;
  using string_t = json::string_t;
  using binary_t = json::binary_t;

  PositionedSax(json& root, const std::size_t& consumed, SourceMap& map)
      : dom_(root), consumed_(consumed), map_(map) {}

  bool null() { return scalar(dom_.null()); }
  bool boolean(bool v) { return scalar(dom_.boolean(v)); }
  bool number_integer(number_integer_t v) { return scalar(dom_.number_integer(v)); }
  bool number_unsigned(number_unsigned_t v) { return scalar(dom_.number_unsigned(v)); }
  bool number_float(number_float_t v, const string_t& s) { return scalar(dom_.number_float(v, s)); }
  bool string(string_t& v) { return scalar(dom_.string(v)); }
  bool binary(binary_t& v) { return scalar(dom_.binary(v)); }

  bool start_object(std::size_t n) {
    mark();
    frames_.push_back({false, 0, {}, {}});
    return dom_.start_object(n);
  }
  bool key(string_t& k) {
    auto& f = frames_.back();
    if (!f.keys.insert(k).second) {
      f.key = k;
      auto [line, col] = map_.line_col_at(position());
      throw Error(ErrorCode::SchemaError, current_pointer() + " (line " + std::to_string(line) +
                                              ", column " + std::to_string(col) +
                                              "): duplicate key \"" + k + "\"");
    }
    f.key = k;
    return dom_.key(k);
  }
  bool end_object() {
    frames_.pop_back();
    advance();
    return dom_.end_object();
  }
  bool start_array(std::size_t n) {
    mark();
    frames_.push_back({true, 0, {}, {}});
    return dom_.start_array(n);
  }
  bool end_array() {
    frames_.pop_back();
    advance();
    return dom_.end_array();
  }
  template <class Exception>
  bool parse_error(std::size_t pos, const std::string& token, const Exception& ex) {
    return dom_.parse_error(pos, token, ex);
  }

 private:
  struct Frame {
    bool array;
    std::size_t index;
    std::string key;
    std::set<std::string> keys;
  };

  std::size_t position() const { return consumed_ == 0 ? 0 : consumed_ - 1; }

  std::string current_pointer() const {
    std::string ptr;
    for (const auto& f : frames_)
      ptr += "/" + (f.array ? std::to_string(f.index) : pointer_token(f.key));
    return ptr;
  }
  void mark() { map_.offsets[current_pointer()] = position(); }
  void advance() {
    if (!frames_.empty() && frames_.back().array) ++frames_.back().index;
  }
  bool scalar(bool ok) {
    // the value was already handed to the DOM; the pointer still names it
    // because the frame index only moves afterwards
    map_.offsets[current_pointer()] = position();
    advance();
    return ok;
  }

  nlohmann::detail::json_sax_dom_parser<json> dom_;
  const std::size_t& consumed_;
  SourceMap& map_;
  std::vector<Frame> frames_;
};

// Typed access to a parsed tree; errors name the JSON pointer and position.
class Reader {
 public:
  explicit Reader(const SourceMap& src) : src_(src) {}

  [[noreturn]] void fail(ErrorCode code, const std::string& ptr, const std::string& msg) const {
    throw Error(code, src_.where(ptr) + ": " + msg);
  }

  void object(const json& j, const std::string& ptr, std::initializer_list<std::string_view> allowed,
              std::initializer_list<std::string_view> required = {}) const {
    if (!j.is_object()) fail(ErrorCode::SchemaError, ptr, "expected an object");
    for (const auto& [k, v] : j.items())
      if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
        fail(ErrorCode::SchemaError, ptr + "/" + pointer_token(k), "unexpected key \"" + k + "\"");
    for (auto k : required)
      if (!j.contains(std::string(k)))
        fail(ErrorCode::SchemaError, ptr, "missing key \"" + std::string(k) + "\"");
  }

  const json& array(const json& j, const std::string& ptr) const {
    if (!j.is_array()) fail(ErrorCode::SchemaError, ptr, "expected an array");
    return j;
  }

  std::string name(const json& j, const std::string& ptr) const {
    if (!j.is_string()) fail(ErrorCode::SchemaError, ptr, "expected a name string");
    auto s = j.get<std::string>();
    if (s.empty()) fail(ErrorCode::SchemaError, ptr, "names must be non-empty");
    return s;
  }

  std::vector<std::string> names(const json& j, const std::string& ptr) const {
    std::vector<std::string> out;
    array(j, ptr);
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(name(j[i], ptr + "/" + std::to_string(i)));
    return out;
  }

  std::int64_t integer(const json& j, const std::string& ptr) const {
    if (j.is_number_unsigned()) {
      auto v = j.get<std::uint64_t>();
      if (v > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
        fail(ErrorCode::SchemaError, ptr, "integer out of range");
      return static_cast<std::int64_t>(v);
    }
    if (j.is_number_integer()) return j.get<std::int64_t>();
    if (j.is_number_float()) {
      double d = j.get<double>();
      if (d != std::floor(d)) fail(ErrorCode::NonIntegerMultiplicity, ptr, "value is not an integer");
      fail(ErrorCode::SchemaError, ptr, "write integers without a decimal point");
    }
    if (j.is_string()) {
      auto q = parse_rational(j.get<std::string>());
      if (!q) fail(ErrorCode::SchemaError, ptr, "not a number: \"" + j.get<std::string>() + "\"");
      if (!is_integral(*q))
        fail(ErrorCode::NonIntegerMultiplicity, ptr, to_string(*q) + " is not an integer");
      auto v = to_int64(*q);
      if (!v) fail(ErrorCode::SchemaError, ptr, "integer out of range");
      return *v;
    }
    fail(ErrorCode::SchemaError, ptr, "expected an integer");
  }

  Rational rational(const json& j, const std::string& ptr) const {
    if (j.is_number_integer()) {
      if (j.is_number_unsigned()) return Rational(Integer(j.get<std::uint64_t>()));
      return Rational(j.get<std::int64_t>());
    }
    if (j.is_string()) {
      auto q = parse_rational(j.get<std::string>());
      if (!q) fail(ErrorCode::SchemaError, ptr, "not a rational: \"" + j.get<std::string>() + "\"");
      return *q;
    }
    fail(ErrorCode::SchemaError, ptr, "expected an integer or a \"p/q\" string");
  }

 private:
  const SourceMap& src_;
};

inline void require_unique(const Reader& rd, const std::vector<std::string>& names,
                           const std::string& ptr, const char* what) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (!seen.insert(names[i]).second)
      rd.fail(ErrorCode::DuplicateName, ptr + "/" + std::to_string(i),
              std::string(what) + " name \"" + names[i] + "\" used twice");
}

inline AccSection read_acc(const Reader& rd, const json& j) {
  const std::string base = "/acc";
  rd.object(j, base, {"components", "points", "branches", "mu"},
            {"components", "points", "branches", "mu"});
  AccSection a;
  a.components = rd.names(j["components"], base + "/components");
  require_unique(rd, a.components, base + "/components", "component");
  a.points = rd.names(j["points"], base + "/points");
  require_unique(rd, a.points, base + "/points", "point");

  std::set<std::string> comps(a.components.begin(), a.components.end());
  std::set<std::string> pts(a.points.begin(), a.points.end());
  std::set<std::string> branch_names;
  const auto& bs = rd.array(j["branches"], base + "/branches");
  for (std::size_t i = 0; i < bs.size(); ++i) {
    const std::string ptr = base + "/branches/" + std::to_string(i);
    rd.object(bs[i], ptr, {"name", "component", "point"}, {"name", "component", "point"});
    BranchEntry b{rd.name(bs[i]["name"], ptr + "/name"),
                  rd.name(bs[i]["component"], ptr + "/component"),
                  rd.name(bs[i]["point"], ptr + "/point")};
    if (!branch_names.insert(b.name).second)
      rd.fail(ErrorCode::DuplicateName, ptr + "/name", "branch name \"" + b.name + "\" used twice");
    if (!comps.contains(b.component))
      rd.fail(ErrorCode::UnknownReference, ptr + "/component",
              "unknown component \"" + b.component + "\"");
    if (!pts.contains(b.point))
      rd.fail(ErrorCode::UnknownReference, ptr + "/point", "unknown point \"" + b.point + "\"");
    a.branches.push_back(std::move(b));
  }

  std::set<std::pair<std::string, std::string>> pairs;
  const auto& ms = rd.array(j["mu"], base + "/mu");
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const std::string ptr = base + "/mu/" + std::to_string(i);
    if (!ms[i].is_array() || ms[i].size() != 3)
      rd.fail(ErrorCode::SchemaError, ptr, "expected [branch, branch, value]");
    MuEntry m{rd.name(ms[i][0], ptr + "/0"), rd.name(ms[i][1], ptr + "/1"),
              rd.integer(ms[i][2], ptr + "/2")};
    for (int k = 0; k < 2; ++k) {
      const auto& ref = k == 0 ? m.first : m.second;
      if (!branch_names.contains(ref))
        rd.fail(ErrorCode::UnknownReference, ptr + "/" + std::to_string(k),
                "unknown branch \"" + ref + "\"");
    }
    if (m.first == m.second) rd.fail(ErrorCode::SchemaError, ptr, "mu of a branch with itself");
    if (!pairs.insert(std::minmax(m.first, m.second)).second)
      rd.fail(ErrorCode::SchemaError, ptr, "mu pair listed twice");
    a.mu.push_back(std::move(m));
  }
  return a;
}

inline std::vector<std::pair<std::string, std::int64_t>> read_int_map(const Reader& rd,
                                                                     const json& j,
                                                                     const std::string& ptr) {
  if (!j.is_object()) rd.fail(ErrorCode::SchemaError, ptr, "expected an object");
  std::vector<std::pair<std::string, std::int64_t>> out;
  for (const auto& [k, v] : j.items()) {
    if (k.empty()) rd.fail(ErrorCode::SchemaError, ptr, "names must be non-empty");
    out.emplace_back(k, rd.integer(v, ptr + "/" + pointer_token(k)));
  }
  return out;
}

inline std::vector<StepEntry> read_resolution(const Reader& rd, const json& j) {
  rd.array(j, "/resolution");
  std::vector<StepEntry> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string ptr = "/resolution/" + std::to_string(i);
    rd.object(j[i], ptr, {"point", "clusters", "nu"}, {"point", "clusters", "nu"});
    StepEntry s;
    s.point = rd.name(j[i]["point"], ptr + "/point");
    const auto& cs = rd.array(j[i]["clusters"], ptr + "/clusters");
    for (std::size_t c = 0; c < cs.size(); ++c)
      s.clusters.push_back(rd.names(cs[c], ptr + "/clusters/" + std::to_string(c)));
    s.nu = read_int_map(rd, j[i]["nu"], ptr + "/nu");
    out.push_back(std::move(s));
  }
  return out;
}

inline PencilSection read_pencil(const Reader& rd, const json& j) {
  rd.object(j, "/pencil", {"fibers", "multiplicities"}, {"fibers"});
  PencilSection p;
  const auto& fs = rd.array(j["fibers"], "/pencil/fibers");
  for (std::size_t f = 0; f < fs.size(); ++f)
    p.fibers.push_back(rd.names(fs[f], "/pencil/fibers/" + std::to_string(f)));
  if (j.contains("multiplicities"))
    p.multiplicities = read_int_map(rd, j["multiplicities"], "/pencil/multiplicities");
  return p;
}

inline FamilySection read_family(const Reader& rd, const json& j) {
  rd.object(j, "/family", {"dim", "vectors"}, {"dim", "vectors"});
  FamilySection fam;
  auto dim = rd.integer(j["dim"], "/family/dim");
  if (dim < 0) rd.fail(ErrorCode::SchemaError, "/family/dim", "dimension must be non-negative");
  fam.dim = static_cast<std::size_t>(dim);
  if (!j["vectors"].is_object())
    rd.fail(ErrorCode::SchemaError, "/family/vectors", "expected an object");
  for (const auto& [k, v] : j["vectors"].items()) {
    const std::string ptr = "/family/vectors/" + pointer_token(k);
    rd.array(v, ptr);
    if (v.size() != fam.dim)
      rd.fail(ErrorCode::SchemaError, ptr, "vector length differs from dim");
    RationalVector vec;
    for (std::size_t i = 0; i < v.size(); ++i)
      vec.push_back(rd.rational(v[i], ptr + "/" + std::to_string(i)));
    fam.vectors.emplace_back(k, std::move(vec));
  }
  return fam;
}

}  // namespace detail

inline Document parse_document(std::string_view text) {
  Document doc;
  for (std::size_t i = 0; i < text.size(); ++i)
    if (text[i] == '\n') doc.source.line_starts.push_back(i + 1);

  json root;
  std::size_t consumed = 0;
  detail::PositionedSax sax(root, consumed, doc.source);
  const char* base = text.data();
  try {
    json::sax_parse(detail::CountingIterator(base, base, &consumed),
                    detail::CountingIterator(base + text.size(), base, nullptr), &sax);
  } catch (const json::parse_error& e) {
    auto [line, col] = doc.source.line_col_at(e.byte == 0 ? 0 : e.byte - 1);
    // drop the library's own "[json.exception...] parse error at line L, column C: " prefix
    std::string msg = e.what();
    if (auto at = msg.find("column "); at != std::string::npos)
      if (auto colon = msg.find(": ", at); colon != std::string::npos) msg = msg.substr(colon + 2);
    throw Error(ErrorCode::SyntaxError,
                "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
  }

  detail::Reader rd(doc.source);
  rd.object(root, "", {"format_version", "acc", "resolution", "pencil", "family"},
            {"format_version"});
  doc.format_version = rd.integer(root["format_version"], "/format_version");
  if (doc.format_version != kFormatVersion)
    rd.fail(ErrorCode::UnsupportedVersion, "/format_version",
            "format_version " + std::to_string(doc.format_version) + " is not supported");
  if (root.contains("acc")) doc.acc = detail::read_acc(rd, root["acc"]);
  if (root.contains("resolution")) doc.resolution = detail::read_resolution(rd, root["resolution"]);
  if (root.contains("pencil")) doc.pencil = detail::read_pencil(rd, root["pencil"]);
  if (root.contains("family")) doc.family = detail::read_family(rd, root["family"]);
  return doc;
}

// ---------------------------------------------------------------- emission

namespace detail {

inline std::string quote(const std::string& s) { return json(s).dump(); }

inline std::string name_list(const std::vector<std::string>& names) {
  std::string out = "[";
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : "") + quote(names[i]);
  return out + "]";
}

inline std::string int_map(const std::vector<std::pair<std::string, std::int64_t>>& m) {
  std::string out = "{";
  for (std::size_t i = 0; i < m.size(); ++i)
    out += (i ? ", " : "") + quote(m[i].first) + ": " + std::to_string(m[i].second);
  return out + "}";
}

// Lines of a multi-line array/object body; "[]" style when empty.
inline std::string block(const std::vector<std::string>& lines, const std::string& indent,
                         char open, char close) {
  if (lines.empty()) return std::string{open, close};
  std::string out(1, open);
  out += "\n";
  for (std::size_t i = 0; i < lines.size(); ++i)
    out += indent + "  " + lines[i] + (i + 1 < lines.size() ? ",\n" : "\n");
  return out + indent + close;
}

}  // namespace detail

/// Canonical text: fixed key order and layout, exact "p/q" strings for
/// rationals, trailing newline.
inline std::string emit_document(const Document& doc) {
  using namespace detail;
  std::vector<std::string> top;
  top.push_back("\"format_version\": " + std::to_string(doc.format_version));
  if (doc.acc) {
    const auto& a = *doc.acc;
    std::vector<std::string> branches, mu;
    for (const auto& b : a.branches)
      branches.push_back("{\"name\": " + quote(b.name) + ", \"component\": " + quote(b.component) +
                         ", \"point\": " + quote(b.point) + "}");
    for (const auto& m : a.mu)
      mu.push_back("[" + quote(m.first) + ", " + quote(m.second) + ", " +
                   std::to_string(m.value) + "]");
    std::vector<std::string> body{"\"components\": " + name_list(a.components),
                                  "\"points\": " + name_list(a.points),
                                  "\"branches\": " + block(branches, "    ", '[', ']'),
                                  "\"mu\": " + block(mu, "    ", '[', ']')};
    top.push_back("\"acc\": " + block(body, "  ", '{', '}'));
  }
  if (doc.resolution) {
    std::vector<std::string> steps;
    for (const auto& s : *doc.resolution) {
      std::string clusters = "[";
      for (std::size_t c = 0; c < s.clusters.size(); ++c)
        clusters += (c ? ", " : "") + name_list(s.clusters[c]);
      clusters += "]";
      steps.push_back("{\"point\": " + quote(s.point) + ", \"clusters\": " + clusters +
                      ", \"nu\": " + int_map(s.nu) + "}");
    }
    top.push_back("\"resolution\": " + block(steps, "  ", '[', ']'));
  }
  if (doc.pencil) {
    std::vector<std::string> fibers;
    for (const auto& f : doc.pencil->fibers) fibers.push_back(name_list(f));
    std::string f = "[";
    for (std::size_t i = 0; i < fibers.size(); ++i) f += (i ? ", " : "") + fibers[i];
    f += "]";
    std::vector<std::string> body{"\"fibers\": " + f,
                                  "\"multiplicities\": " + int_map(doc.pencil->multiplicities)};
    top.push_back("\"pencil\": " + block(body, "  ", '{', '}'));
  }
  if (doc.family) {
    std::vector<std::string> vecs;
    for (const auto& [name, v] : doc.family->vectors) {
      std::string entry = quote(name) + ": [";
      for (std::size_t i = 0; i < v.size(); ++i) entry += (i ? ", " : "") + quote(to_string(v[i]));
      vecs.push_back(entry + "]");
    }
    std::vector<std::string> body{"\"dim\": " + std::to_string(doc.family->dim),
                                  "\"vectors\": " + block(vecs, "    ", '{', '}')};
    top.push_back("\"family\": " + block(body, "  ", '{', '}'));
  }
  return block(top, "", '{', '}') + "\n";
}

// ----------------------------------------------------------------- binding

class Names {
 public:
  std::size_t add(const std::string& name) {
    if (!index_.emplace(name, list_.size()).second)
      throw Error(ErrorCode::DuplicateName, "name \"" + name + "\" already in use");
    list_.push_back(name);
    return list_.size() - 1;
  }
  std::optional<std::size_t> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  const std::string& operator[](std::size_t i) const { return list_.at(i); }
  std::size_t size() const { return list_.size(); }
  const std::vector<std::string>& list() const { return list_; }

 private:
  std::vector<std::string> list_;
  std::map<std::string, std::size_t> index_;
};

/// Names of every component, point (live or retired) and branch of a stage.
struct StageNames {
  Names components;
  Names points;
  Names branches;

  const std::string& operator()(ComponentId c) const { return components[c.index()]; }
  const std::string& operator()(PointId p) const { return points[p.index()]; }
  const std::string& operator()(BranchId b) const { return branches[b.index()]; }
};

struct Model {
  Acc acc;
  StageNames names;
};

inline Model bind_acc(const Document& doc) {
  if (!doc.acc) throw Error(ErrorCode::SchemaError, "document has no acc section");
  const auto& a = *doc.acc;
  StageNames names;
  for (const auto& c : a.components) names.components.add(c);
  for (const auto& p : a.points) names.points.add(p);
  RawAcc raw;
  raw.components = a.components.size();
  raw.points = a.points.size();
  for (const auto& b : a.branches) {
    names.branches.add(b.name);
    raw.branches.push_back({*names.points.find(b.point), *names.components.find(b.component)});
  }
  for (const auto& m : a.mu)
    raw.mu.push_back({*names.branches.find(m.first), *names.branches.find(m.second), m.value});
  return {validate_acc(raw), std::move(names)};
}

/// Names for the entities created by step `step` (0-based): component
/// "E<step+1>", point "<parent>.<i>" per cluster, exceptional branch
/// "E<step+1>@<new point>".
inline void extend_names(StageNames& names, std::size_t step, PointId parent,
                         const CreatedIds& created) {
  const std::string e = "E" + std::to_string(step + 1);
  auto add = [](Names& n, const std::string& name) {
    try {
      return n.add(name);
    } catch (const Error&) {
      throw Error(ErrorCode::DuplicateName, "generated name \"" + name + "\" is already in use");
    }
  };
  add(names.components, e);
  for (std::size_t i = 0; i < created.points.size(); ++i) {
    const std::string p = names(parent) + "." + std::to_string(i + 1);
    add(names.points, p);
    add(names.branches, e + "@" + p);
  }
}

inline StageNames names_along(const StageNames& initial, const ResolutionTrace& trace) {
  StageNames names = initial;
  for (std::size_t s = 0; s < trace.steps().size(); ++s)
    extend_names(names, s, trace.steps()[s].spec.point, trace.steps()[s].created);
  return names;
}

struct BoundResolution {
  ResolutionTrace trace;
  StageNames names;  // of the final stage
};

/// Replays the resolution section of `doc` against `model`, resolving names
/// stage by stage.
inline BoundResolution bind_resolution(const Model& model, const Document& doc) {
  if (!doc.resolution) throw Error(ErrorCode::SchemaError, "document has no resolution section");
  detail::Reader rd(doc.source);
  StageNames names = model.names;
  Acc current = model.acc;
  std::vector<SigmaProcessSpec> script;
  for (std::size_t s = 0; s < doc.resolution->size(); ++s) {
    const auto& entry = (*doc.resolution)[s];
    const std::string ptr = "/resolution/" + std::to_string(s);
    SigmaProcessSpec spec;
    auto p = names.points.find(entry.point);
    if (!p) rd.fail(ErrorCode::UnknownReference, ptr + "/point", "unknown point \"" + entry.point + "\"");
    spec.point = PointId(*p);
    auto branch = [&](const std::string& name, const std::string& at) {
      auto b = names.branches.find(name);
      if (!b) rd.fail(ErrorCode::UnknownReference, at, "unknown branch \"" + name + "\"");
      return BranchId(*b);
    };
    for (std::size_t c = 0; c < entry.clusters.size(); ++c) {
      auto& cluster = spec.clusters.emplace_back();
      for (std::size_t i = 0; i < entry.clusters[c].size(); ++i)
        cluster.push_back(branch(entry.clusters[c][i],
                                 ptr + "/clusters/" + std::to_string(c) + "/" + std::to_string(i)));
    }
    for (const auto& [name, nu] : entry.nu)
      spec.nu[branch(name, ptr + "/nu/" + detail::pointer_token(name))] = nu;
    auto result = apply_script_step(current, spec, s, model.acc.branch_count());
    extend_names(names, s, spec.point, result.created);
    current = std::move(result.acc);
    script.push_back(std::move(spec));
  }
  return {validate_resolution_script(model.acc, script), std::move(names)};
}

inline std::vector<StepEntry> script_entries(const ResolutionTrace& trace,
                                             const StageNames& initial) {
  StageNames names = initial;
  std::vector<StepEntry> out;
  for (std::size_t s = 0; s < trace.steps().size(); ++s) {
    const auto& spec = trace.steps()[s].spec;
    StepEntry e;
    e.point = names(spec.point);
    for (const auto& cluster : spec.clusters) {
      auto& c = e.clusters.emplace_back();
      for (BranchId b : cluster) c.push_back(names(b));
    }
    for (const auto& cluster : spec.clusters)
      for (BranchId b : cluster) e.nu.emplace_back(names(b), spec.nu.at(b));
    extend_names(names, s, spec.point, trace.steps()[s].created);
    out.push_back(std::move(e));
  }
  return out;
}

struct PencilInput {
  ComponentPartition fibers;
  std::vector<std::int64_t> multiplicity;
};

inline PencilInput bind_pencil(const Model& model, const Document& doc) {
  if (!doc.pencil) throw Error(ErrorCode::SchemaError, "document has no pencil section");
  detail::Reader rd(doc.source);
  const auto& names = model.names.components;
  auto component = [&](const std::string& name, const std::string& ptr) {
    auto c = names.find(name);
    if (!c || *c >= model.acc.component_count())
      rd.fail(ErrorCode::UnknownReference, ptr, "unknown component \"" + name + "\"");
    return *c;
  };
  PencilInput out;
  for (std::size_t f = 0; f < doc.pencil->fibers.size(); ++f) {
    auto& fiber = out.fibers.emplace_back();
    for (std::size_t i = 0; i < doc.pencil->fibers[f].size(); ++i)
      fiber.emplace_back(component(doc.pencil->fibers[f][i],
                                   "/pencil/fibers/" + std::to_string(f) + "/" + std::to_string(i)));
  }
  out.multiplicity.assign(model.acc.component_count(), 1);
  for (const auto& [name, m] : doc.pencil->multiplicities)
    out.multiplicity[component(name, "/pencil/multiplicities/" + detail::pointer_token(name))] = m;
  return out;
}

inline PencilSection pencil_section(const CombinatorialPencil& pencil, const StageNames& names) {
  PencilSection out;
  for (const auto& fiber : pencil.fibers) {
    auto& f = out.fibers.emplace_back();
    for (ComponentId c : fiber) f.push_back(names(c));
  }
  for (std::size_t c = 0; c < pencil.multiplicity.size(); ++c)
    out.multiplicities.emplace_back(names.components[c], pencil.multiplicity[c]);
  return out;
}

/// Family on the components of the initial ACC; every component needs a vector.
inline VectorFamily bind_family(const Model& model, const Document& doc) {
  if (!doc.family) throw Error(ErrorCode::SchemaError, "document has no family section");
  detail::Reader rd(doc.source);
  VectorFamily fam;
  fam.dim = doc.family->dim;
  std::vector<std::optional<RationalVector>> slots(model.acc.component_count());
  for (const auto& [name, v] : doc.family->vectors) {
    auto c = model.names.components.find(name);
    const std::string ptr = "/family/vectors/" + detail::pointer_token(name);
    if (!c || *c >= slots.size())
      rd.fail(ErrorCode::UnknownReference, ptr, "unknown component \"" + name + "\"");
    slots[*c] = v;
  }
  for (std::size_t c = 0; c < slots.size(); ++c) {
    if (!slots[c])
      rd.fail(ErrorCode::SchemaError, "/family/vectors",
              "no vector for component \"" + model.names.components[c] + "\"");
    fam.vectors.push_back(*slots[c]);
  }
  return fam;
}

}  // namespace acc::io
