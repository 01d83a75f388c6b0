#pragma once

// The acc command line: subcommands over documents, aligned text reports
// and --json reports. Exit codes: 0 ok, 1 domain error, 2 usage/parse error.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "acc/io.hpp"

namespace acc::cli {

inline constexpr std::size_t kDefaultBudget = 12;

/// Usage problems that are not input-format errors: missing files,
/// missing sections, bad flags.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Text table. Numeric tables right-align every column but the first;
// otherwise all columns are left-aligned.
class Table {
 public:
  explicit Table(bool numeric = false) : numeric_(numeric) {}

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string render(const std::string& indent = "") const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_)
      for (std::size_t c = 0; c < r.size(); ++c) {
        if (width.size() <= c) width.push_back(0);
        width[c] = std::max(width[c], r[c].size());
      }
    std::string out;
    for (const auto& r : rows_) {
      std::string line = indent;
      for (std::size_t c = 0; c < r.size(); ++c) {
        std::string pad(width[c] - r[c].size(), ' ');
        if (c) line += "  ";
        line += (c == 0 || !numeric_) ? r[c] + pad : pad + r[c];
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out += line + "\n";
    }
    return out;
  }

 private:
  bool numeric_;
  std::vector<std::vector<std::string>> rows_;
};

template <class T>
std::string cell(const T& v) {
  if constexpr (std::is_same_v<T, Rational>)
    return to_string(v);
  else
    return std::to_string(v);
}

template <class T>
std::string matrix_text(const Matrix<T>& m, const std::vector<std::string>& row_labels,
                        const std::vector<std::string>& col_labels, const std::string& indent) {
  Table t(true);
  std::vector<std::string> head{""};
  head.insert(head.end(), col_labels.begin(), col_labels.end());
  t.add(head);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::vector<std::string> row{row_labels[i]};
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(cell(m(i, j)));
    t.add(row);
  }
  return t.render(indent);
}

template <class T>
io::json matrix_json(const Matrix<T>& m) {
  io::json rows = io::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    io::json row = io::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if constexpr (std::is_same_v<T, Rational>)
        row.push_back(to_string(m(i, j)));
      else
        row.push_back(m(i, j));
    }
    rows.push_back(row);
  }
  return rows;
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

inline std::string vector_text(const RationalVector& v) { return to_string(v); }

inline io::json vector_json(const RationalVector& v) {
  io::json out = io::json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

struct Options {
  std::string file;
  std::string script;
  std::string pencil;
  std::string family;
  bool automatic = false;
  bool as_json = false;
  std::size_t budget = kDefaultBudget;
  bool budget_given = false;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::size_t effective_budget(const Options& o) {
  if (o.budget_given) return o.budget;
  if (const char* env = std::getenv("ACC_PENCIL_BUDGET"); env && *env) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || v == 0) throw UsageError("ACC_PENCIL_BUDGET must be a positive integer");
    return static_cast<std::size_t>(v);
  }
  return kDefaultBudget;
}

// Everything a subcommand may need, loaded lazily from the options.
class Session {
 public:
  explicit Session(const Options& o) : opts_(o), doc_(io::parse_document(read_file(o.file))) {}

  const io::Document& doc() const { return doc_; }

  const io::Model& model() {
    if (!model_) model_ = io::bind_acc(doc_);
    return *model_;
  }

  const DegreeData& degrees() {
    if (!degrees_) degrees_ = compute_degrees(model().acc);
    return *degrees_;
  }

  bool has_trace_source() const {
    return opts_.automatic || !opts_.script.empty() || doc_.resolution.has_value();
  }

  /// Resolution from --auto, --script, or the document itself.
  const io::BoundResolution& resolution() {
    if (resolution_) return *resolution_;
    if (opts_.automatic) {
      auto trace = auto_resolve(model().acc, effective_budget(opts_));
      auto names = io::names_along(model().names, trace);
      resolution_.emplace(io::BoundResolution{std::move(trace), std::move(names)});
    } else if (!opts_.script.empty()) {
      resolution_.emplace(io::bind_resolution(model(), load(opts_.script)));
    } else if (doc_.resolution) {
      resolution_.emplace(io::bind_resolution(model(), doc_));
    } else {
      throw UsageError("no resolution: pass --script FILE or --auto");
    }
    return *resolution_;
  }

  bool has_pencil_source() const { return !opts_.pencil.empty() || doc_.pencil.has_value(); }

  const PencilVerification& pencil() {
    if (pencil_) return *pencil_;
    if (!has_pencil_source()) throw UsageError("no pencil: pass --pencil FILE");
    auto input = opts_.pencil.empty() ? io::bind_pencil(model(), doc_)
                                      : io::bind_pencil(model(), load(opts_.pencil));
    pencil_ = verify_pencil(model().acc, degrees(), std::move(input.fibers), input.multiplicity);
    return *pencil_;
  }

  bool has_family_source() const { return !opts_.family.empty() || doc_.family.has_value(); }

  VectorFamily family() {
    return opts_.family.empty() ? io::bind_family(model(), doc_)
                                : io::bind_family(model(), load(opts_.family));
  }

 private:
  io::Document load(const std::string& path) { return io::parse_document(read_file(path)); }

  const Options& opts_;
  io::Document doc_;
  std::optional<io::Model> model_;
  std::optional<DegreeData> degrees_;
  std::optional<io::BoundResolution> resolution_;
  std::optional<PencilVerification> pencil_;
};

struct Report {
  std::string text;
  io::json json = io::json::object();
  std::string json_text;  // preformatted --json output, used when non-empty
};

// ------------------------------------------------------------ subcommands

inline Report cmd_validate(Session& s) {
  const auto& m = s.model();
  const auto& acc = m.acc;
  Report r;
  r.text = "ACC valid: " + std::to_string(acc.component_count()) + " components, " +
           std::to_string(acc.points().size()) + " points, " + std::to_string(acc.branch_count()) +
           " branches\n";
  Table pts;
  io::json jp = io::json::object();
  for (PointId p : acc.points()) {
    std::vector<std::string> row{m.names(p)};
    io::json jb = io::json::array();
    for (BranchId b : acc.branches_at(p)) {
      row.push_back(m.names(b) + " (" + m.names(acc.owner(b)) + ")");
      jb.push_back(m.names(b));
    }
    pts.add(row);
    jp[m.names(p)] = jb;
  }
  r.text += "points:\n" + pts.render("  ");
  Table mu(true);
  io::json jm = io::json::array();
  for (const auto& [bp, v] : acc.mu_table()) {
    mu.add({m.names(bp.first), m.names(bp.second), std::to_string(v)});
    jm.push_back({m.names(bp.first), m.names(bp.second), v});
  }
  r.text += "mu:\n" + mu.render("  ");

  r.json["valid"] = true;
  r.json["components"] = m.names.components.list();
  r.json["points"] = jp;
  r.json["mu"] = jm;
  return r;
}

inline Report cmd_degrees(Session& s) {
  const auto& m = s.model();
  const auto& d = s.degrees();
  const auto& names = m.names.components.list();
  Matrix<std::int64_t> pw(names.size(), names.size());
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = 0; j < names.size(); ++j) pw(i, j) = d.pairwise[i][j];
  Report r;
  r.text = "pairwise intersections:\n" + matrix_text(pw, names, names, "  ");
  Table t(true);
  t.add({"", "d^2", "d"});
  io::json jd = io::json::object();
  for (std::size_t i = 0; i < names.size(); ++i) {
    t.add({names[i], to_string(d.degree_sq[i]), to_string(d.degree[i])});
    jd[names[i]] = to_string(d.degree[i]);
  }
  r.text += "degrees:\n" + t.render("  ");
  r.json["pairwise"] = matrix_json(pw);
  r.json["degrees"] = jd;
  return r;
}

inline Report cmd_resolve(Session& s) {
  const auto& m = s.model();
  const auto& res = s.resolution();
  const auto& trace = res.trace;
  const auto& names = res.names;
  Report r;
  r.text = "resolution: " + std::to_string(trace.steps().size()) + " steps\n";
  for (std::size_t i = 0; i < trace.steps().size(); ++i) {
    const auto& st = trace.steps()[i];
    std::vector<std::string> clusters, nu, fresh;
    for (const auto& c : st.spec.clusters) {
      std::vector<std::string> members;
      for (BranchId b : c) {
        members.push_back(names(b));
        nu.push_back(names(b) + "=" + std::to_string(st.spec.nu.at(b)));
      }
      clusters.push_back("{" + join(members, ", ") + "}");
    }
    for (PointId p : st.created.points) fresh.push_back(names(p));
    r.text += "step " + std::to_string(i + 1) + ": blow up " + names(st.spec.point) + " -> " +
              names(st.created.exceptional) + "\n";
    r.text += "  clusters: " + join(clusters, " ") + "\n";
    r.text += "  nu: " + join(nu, " ") + "\n";
    r.text += "  new points: " + join(fresh, " ") + "\n";
  }
  const Acc& last = trace.final_stage();
  r.text += "final stage: " + std::to_string(last.component_count()) + " components, " +
            std::to_string(last.points().size()) + " points, normal crossing\n";

  io::Document out;
  out.resolution = io::script_entries(trace, m.names);
  r.json_text = io::emit_document(out);
  return r;
}

inline std::vector<std::string> fiber_cells(const CombinatorialPencil& p, const io::StageNames& n) {
  std::vector<std::string> out;
  for (const auto& f : p.fibers) {
    std::vector<std::string> members;
    for (ComponentId c : f) {
      auto m = p.multiplicity[c.index()];
      members.push_back(m == 1 ? n(c) : n(c) + " (m=" + std::to_string(m) + ")");
    }
    out.push_back("{" + join(members, ", ") + "}");
  }
  return out;
}

inline io::json pencil_json(const CombinatorialPencil& p, const io::StageNames& n) {
  io::Document d;
  d.pencil = io::pencil_section(p, n);
  auto j = io::json::parse(io::emit_document(d))["pencil"];
  j["fiber_degree"] = to_string(p.fiber_degree);
  return j;
}

inline std::string pencil_text(const CombinatorialPencil& p, const io::StageNames& n) {
  std::string out = "pencil: " + std::to_string(p.fibers.size()) + " fibers, fiber degree " +
                    to_string(p.fiber_degree) + ", gcd " + std::to_string(p.multiplicity_gcd()) + "\n";
  Table t;
  auto cells = fiber_cells(p, n);
  for (std::size_t f = 0; f < cells.size(); ++f) t.add({"F" + std::to_string(f + 1), cells[f]});
  return out + t.render("  ");
}

inline Report cmd_check_pencil(Session& s) {
  const auto& m = s.model();
  const auto& pv = s.pencil();
  Report r;
  r.text = "pencil verified\n" + pencil_text(pv.pencil, m.names);
  r.json["verified"] = true;
  r.json["pencil"] = pencil_json(pv.pencil, m.names);

  r.text += "base points: " + std::to_string(pv.report.base_point_count()) + "\n";
  Table t;
  io::json jp = io::json::object();
  for (const auto& pt : pv.report.points) {
    if (!pt.base_point) {
      t.add({m.names(pt.point), "single fiber"});
      jp[m.names(pt.point)] = "single fiber";
      continue;
    }
    std::vector<std::string> ks;
    io::json jk = io::json::object();
    for (const auto& [b, k] : pt.k) {
      ks.push_back(m.names(b) + " k=" + std::to_string(k));
      jk[m.names(b)] = k;
    }
    t.add({m.names(pt.point), join(ks, ", ")});
    jp[m.names(pt.point)] = jk;
  }
  r.text += t.render("  ");
  r.json["points"] = jp;

  if (s.has_trace_source()) {
    const auto& res = s.resolution();
    auto pr = is_primitive(pv.pencil, res.trace);
    std::string why;
    if (pr.split_fiber) {
      std::vector<std::string> f;
      for (ComponentId c : *pr.split_fiber) f.push_back(m.names(c));
      why = " (fiber {" + join(f, ", ") + "} is split)";
    } else if (pr.gcd != 1) {
      why = " (gcd " + std::to_string(pr.gcd) + ")";
    }
    r.text += std::string("primitive: ") + (pr.primitive ? "yes" : "no") + why + "\n";
    r.json["primitive"] = pr.primitive;
    if (pr.split_fiber) {
      io::json f = io::json::array();
      for (ComponentId c : *pr.split_fiber) f.push_back(m.names(c));
      r.json["split_fiber"] = f;
    }
    r.json["gcd"] = pr.gcd;
  }
  return r;
}

struct Spectral {
  SpectralData data;
  BoxDecomposition boxes;
  std::optional<DivisorClass> divisors;
};

inline std::vector<std::string> kept_names(const SpectralData& sd, const io::StageNames& n) {
  std::vector<std::string> out;
  for (ComponentId c : sd.kept) out.push_back(n(c));
  return out;
}

inline std::string boxes_text(const BoxDecomposition& bd, const SpectralData& sd,
                              const io::StageNames& n) {
  Table t;
  for (std::size_t l = 0; l < bd.boxes.size(); ++l) {
    const auto& b = bd.boxes[l];
    std::vector<std::string> members;
    for (auto i : b.members) members.push_back(n(sd.kept[i]));
    t.add({"box " + std::to_string(l + 1), "{" + join(members, ", ") + "}",
           b.type ? vinberg_name(*b.type) : "-",
           b.kernel.empty() ? "" : "kernel " + vector_text(b.kernel)});
  }
  return "boxes:\n" + t.render("  ");
}

inline io::json boxes_json(const BoxDecomposition& bd, const SpectralData& sd,
                           const io::StageNames& n) {
  io::json out = io::json::array();
  for (const auto& b : bd.boxes) {
    io::json jb = io::json::object();
    io::json members = io::json::array();
    for (auto i : b.members) members.push_back(n(sd.kept[i]));
    jb["members"] = members;
    jb["type"] = b.type ? vinberg_name(*b.type) : "";
    if (!b.kernel.empty()) jb["kernel"] = vector_json(b.kernel);
    out.push_back(jb);
  }
  return out;
}

inline Report cmd_classify(Session& s) {
  const auto& res = s.resolution();
  const auto& names = res.names;
  std::optional<VectorFamily> fam;
  if (s.has_family_source())
    fam = s.family();
  else if (s.has_pencil_source())
    fam = family_from_pencil(s.model().acc, s.pencil().pencil);
  std::optional<VectorFamily> final_fam;
  if (fam) final_fam = transport_to_final(res.trace, *fam);

  auto sd = final_fam ? build_spectral_data(res.trace, s.degrees(), *final_fam)
                      : build_spectral_data(res.trace, s.degrees(), all_components(res.trace.final_stage()));
  auto bd = decompose_boxes(sd);
  classify_boxes(bd);

  auto rows = kept_names(sd, names);
  std::vector<std::string> steps;
  for (PointId p : sd.blown_points) steps.push_back(names(p));
  Report r;
  r.text = "kept: " + join(rows, ", ") + "\n";
  r.text += "J:\n" + matrix_text(sd.J, rows, steps, "  ");
  r.text += "D:\n" + matrix_text(sd.D, rows, rows, "  ");
  r.text += "Q:\n" + matrix_text(sd.Q, rows, rows, "  ");
  r.text += boxes_text(bd, sd, names);
  r.json["kept"] = rows;
  r.json["steps"] = steps;
  r.json["J"] = matrix_json(sd.J);
  r.json["D"] = matrix_json(sd.D);
  r.json["Q"] = matrix_json(sd.Q);
  r.json["boxes"] = boxes_json(bd, sd, names);

  if (final_fam) {
    auto adm = is_admissible_family(res.trace.final_stage(), *final_fam);
    auto dc = classify_divisors(res.trace, *final_fam);
    Table t;
    io::json jd = io::json::object();
    for (std::size_t c = res.trace.original_component_count(); c < dc.kind.size(); ++c) {
      ComponentId e(c);
      t.add({names(e), divisor_kind_name(dc.kind[c]), vector_text((*final_fam)[e])});
      jd[names(e)] = divisor_kind_name(dc.kind[c]);
    }
    r.text += std::string("family admissible: ") + (adm.admissible ? "yes" : "no") +
              (adm.spanning ? ", spanning" : ", not spanning") + "\n";
    r.text += "exceptional divisors:\n" + t.render("  ");
    r.json["admissible"] = adm.admissible;
    r.json["spanning"] = adm.spanning;
    r.json["divisors"] = jd;
  }
  return r;
}

inline Report cmd_refine(Session& s) {
  const auto& m = s.model();
  const auto& pv = s.pencil();
  const auto& res = s.resolution();
  auto ref = primitive_refinement(m.acc, s.degrees(), pv.pencil, res.trace);
  bool refines = is_refinement(ref.pencil, pv.pencil);
  auto pr = is_primitive(ref.pencil, res.trace);

  Report r;
  r.text = "input " + pencil_text(pv.pencil, m.names);
  r.text += "kept: " + join(kept_names(ref.spectral, res.names), ", ") + "\n";
  r.text += boxes_text(ref.boxes, ref.spectral, res.names);
  r.text += "refined " + pencil_text(ref.pencil, m.names);
  r.text += std::string("refines input: ") + (refines ? "yes" : "no") + "\n";
  r.text += std::string("primitive: ") + (pr.primitive ? "yes" : "no") + "\n";
  r.text += std::string("unchanged: ") + (ref.pencil == pv.pencil ? "yes" : "no") + "\n";
  r.json["input"] = pencil_json(pv.pencil, m.names);
  r.json["boxes"] = boxes_json(ref.boxes, ref.spectral, res.names);
  r.json["refined"] = pencil_json(ref.pencil, m.names);
  r.json["refines_input"] = refines;
  r.json["primitive"] = pr.primitive;
  r.json["unchanged"] = ref.pencil == pv.pencil;
  return r;
}

// --------------------------------------------------------------- dispatch

/// Runs one command; `args` excludes the program name.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Abstract curve combinatorics: blow-ups, admissible families, pencils", "acc"};
  app.require_subcommand(1);
  Options o;

  struct Sub {
    const char* name;
    const char* help;
    Report (*run)(Session&);
    CLI::App* app = nullptr;
  };
  std::vector<Sub> subs{
      {"validate", "check the ACC axioms", cmd_validate},
      {"degrees", "Bezout degrees", cmd_degrees},
      {"resolve", "replay a resolution script or search for one", cmd_resolve},
      {"check-pencil", "verify a combinatorial pencil and report base points", cmd_check_pencil},
      {"classify", "J, D, Q, boxes and Vinberg types", cmd_classify},
      {"refine", "primitive refinement of a pencil", cmd_refine},
  };
  for (auto& sub : subs) {
    auto* a = app.add_subcommand(sub.name, sub.help);
    a->add_option("file", o.file, "document with an acc section")->required();
    auto* script = a->add_option("--script", o.script, "document with a resolution section");
    auto* automatic = a->add_flag("--auto", o.automatic, "search for a resolution");
    script->excludes(automatic);
    a->add_option("--pencil", o.pencil, "document with a pencil section");
    a->add_option("--family", o.family, "document with a family section");
    a->add_option("--budget", o.budget, "step limit for --auto (default $ACC_PENCIL_BUDGET or 12)")
        ->check(CLI::PositiveNumber)
        ->each([&o](const std::string&) { o.budget_given = true; });
    a->add_flag("--json", o.as_json, "machine-readable report");
    sub.app = a;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    for (auto& sub : subs) {
      if (!sub.app->parsed()) continue;
      Session session(o);
      Report r = sub.run(session);
      if (o.as_json)
        out << (r.json_text.empty() ? r.json.dump(2) + "\n" : r.json_text);
      else
        out << r.text;
      return 0;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_parse_error(e.code()) ? 2 : 1;
  }
  return 2;
}

}  // namespace acc::cli
