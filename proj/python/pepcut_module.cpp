// Python bindings. Words cross the boundary as space-separated token strings,
// the same notation the instance files and the command line use.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pep/cli.hpp"
#include "pep/errors.hpp"
#include "pep/format.hpp"
#include "pep/higman.hpp"
#include "pep/reductions.hpp"
#include "pep/solver.hpp"
#include "pep/universal.hpp"

namespace py = pybind11;
using namespace pep;

namespace {

SearchOptions options(std::size_t max_len, std::uint64_t node_budget, unsigned threads) {
  SearchOptions o;
  o.max_len = max_len;
  o.node_budget = node_budget;
  o.threads = threads;
  return o;
}

std::string kind_name(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::solution: return "solution";
    case Verdict::Kind::fails_membership: return "fails_membership";
    case Verdict::Kind::fails_embedding: return "fails_embedding";
  }
  return "";
}

std::string side_name(Verdict::Side s) {
  switch (s) {
    case Verdict::Side::none: return "none";
    case Verdict::Side::whole: return "whole";
    case Verdict::Side::prefix: return "prefix";
    case Verdict::Side::suffix: return "suffix";
  }
  return "";
}

std::string count_kind(CountResult::Kind k) {
  switch (k) {
    case CountResult::Kind::infinite: return "infinite";
    case CountResult::Kind::finite_at_least: return "at_least";
    case CountResult::Kind::exact: return "exact";
  }
  return "";
}

std::string universal_kind(UniversalVerdict::Kind k) {
  switch (k) {
    case UniversalVerdict::Kind::holds_up_to: return "holds_up_to";
    case UniversalVerdict::Kind::fails: return "fails";
    case UniversalVerdict::Kind::fails_infinitely: return "fails_infinitely";
  }
  return "";
}

py::object maybe_word(const Alphabet& a, const std::optional<Word>& w) {
  if (!w) return py::none();
  return py::str(a.format(*w));
}

py::dict pump_dict(const PepInstance& inst, const PumpCertificate& c) {
  py::dict d;
  d["sigma"] = inst.sigma()->format(c.sigma);
  d["a"] = c.a;
  d["b"] = c.b;
  d["color"] = c.color == Color::blue ? "blue" : "red";
  return d;
}

py::dict universal_dict(const PepInstance& inst, const UniversalVerdict& r) {
  py::dict d;
  d["kind"] = universal_kind(r.kind);
  d["counterexample"] = maybe_word(*inst.sigma(), r.counterexample);
  d["non_solutions_seen"] = r.non_solutions_seen;
  if (r.loop) {
    const auto& s = *inst.sigma();
    d["loop"] = py::make_tuple(s.format(r.loop->alpha), s.format(r.loop->beta), s.format(r.loop->gamma));
  } else {
    d["loop"] = py::none();
  }
  return d;
}

// Characters of a Python string as letters, for the word-order helpers.
Word chars(const std::string& s) {
  Word w;
  for (unsigned char c : s) w.push_back(c);
  return w;
}
std::string unchars(const Word& w) {
  std::string s;
  for (Symbol c : w) s.push_back(static_cast<char>(c));
  return s;
}

}  // namespace

PYBIND11_MODULE(pepcut, m) {
  m.doc() = "Post embedding problems with regular constraints";

  static py::exception<Error> pep_error(m, "PepError", PyExc_ValueError);
  static py::exception<BudgetExceeded> budget_error(m, "BudgetExceeded", pep_error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const BudgetExceeded& e) {
      py::set_error(budget_error, e.what());
    } catch (const Error& e) {
      py::set_error(pep_error, e.what());
    }
  });

  py::class_<PepInstance>(m, "Instance")
      .def_static("parse", [](const std::string& text) { return parse_instance(text); })
      .def_static("load", [](const std::string& path) { return parse_instance(read_file(path)); })
      .def_property_readonly("variant", [](const PepInstance& i) { return to_string(i.variant()); })
      .def_property_readonly("sigma", [](const PepInstance& i) { return i.sigma()->tokens(); })
      .def_property_readonly("gamma", [](const PepInstance& i) { return i.gamma()->tokens(); })
      .def("u", [](const PepInstance& i, const std::string& w) {
        return i.gamma()->format(i.u().apply(i.sigma()->parse_word(w)));
      })
      .def("v", [](const PepInstance& i, const std::string& w) {
        return i.gamma()->format(i.v().apply(i.sigma()->parse_word(w)));
      })
      .def("__str__", [](const PepInstance& i) { return format_instance(i); })
      .def("__repr__", [](const PepInstance& i) {
        return "<pepcut.Instance " + to_string(i.variant()) + ", |Σ|=" +
               std::to_string(i.sigma()->size()) + ">";
      });

  m.def("check", [](const PepInstance& inst, const std::string& word) {
    auto v = check_solution(inst, inst.sigma()->parse_word(word));
    py::dict d;
    d["kind"] = kind_name(v.kind);
    d["side"] = side_name(v.side);
    d["split"] = v.split;
    return d;
  }, py::arg("instance"), py::arg("word"));

  m.def("solve", [](const PepInstance& inst, std::size_t max_len, std::uint64_t node_budget,
                    unsigned threads) {
    SolveResult r;
    {
      py::gil_scoped_release release;
      r = solve(inst, options(max_len, node_budget, threads));
    }
    py::dict d;
    d["kind"] = r.kind == SolveResult::Kind::found           ? "found"
                : r.kind == SolveResult::Kind::none_certified ? "none"
                                                              : "none_up_to";
    d["witness"] = maybe_word(*inst.sigma(), r.witness);
    d["bound"] = r.bound ? py::cast(*r.bound) : py::none();
    d["nodes"] = r.stats.nodes;
    return d;
  }, py::arg("instance"), py::arg("max_len") = 12, py::arg("node_budget") = 10'000'000,
     py::arg("threads") = 1);

  m.def("solutions", [](const PepInstance& inst, std::size_t max_len, std::size_t limit) {
    std::vector<std::string> out;
    enumerate_solutions(inst, options(max_len, 10'000'000, 1), [&](const Word& w) {
      out.push_back(inst.sigma()->format(w));
      return out.size() < limit;
    });
    return out;
  }, py::arg("instance"), py::arg("max_len") = 8, py::arg("limit") = 1000);

  m.def("count", [](const PepInstance& inst, std::size_t max_len) {
    auto r = count(inst, options(max_len, 10'000'000, 1));
    py::dict d;
    d["kind"] = count_kind(r.kind);
    d["count"] = r.count;
    d["certificate"] = r.certificate ? py::object(pump_dict(inst, *r.certificate)) : py::none();
    return d;
  }, py::arg("instance"), py::arg("max_len") = 12);

  m.def("pump_certificate", [](const PepInstance& inst, std::size_t max_len) -> py::object {
    auto c = infinite_check(inst, options(max_len, 10'000'000, 1));
    if (!c) return py::none();
    return pump_dict(inst, *c);
  }, py::arg("instance"), py::arg("max_len") = 12);

  m.def("pump", [](const PepInstance& inst, const std::string& word, std::size_t a, std::size_t b,
                   std::size_t k) {
    auto c = color_indices(inst, inst.sigma()->parse_word(word));
    return inst.sigma()->format(pump(c, a, b, k));
  }, py::arg("instance"), py::arg("word"), py::arg("a"), py::arg("b"), py::arg("k"));

  m.def("minimize", [](const PepInstance& inst, const std::string& word) {
    return inst.sigma()->format(minimize_solution(inst, inst.sigma()->parse_word(word)));
  }, py::arg("instance"), py::arg("word"));

  m.def("forall", [](const PepInstance& inst, std::size_t max_len) {
    return universal_dict(inst, forall_check(inst, options(max_len, 10'000'000, 1)));
  }, py::arg("instance"), py::arg("max_len") = 8);

  m.def("forall_inf", [](const PepInstance& inst, std::size_t max_len) {
    return universal_dict(inst, forall_inf_check(inst, options(max_len, 10'000'000, 1)));
  }, py::arg("instance"), py::arg("max_len") = 8);

  m.def("reduce_forall_inf", [](const PepInstance& inst) { return reduce_to_forall_inf_pep(inst).output; },
        py::arg("instance"));
  m.def("pad", &pad_forall_to_forall_inf, py::arg("instance"));

  m.def("encode_pcp", [](const std::string& text) { return encode_pcp(parse_pcp(text)).instance; },
        py::arg("text"));
  m.def("encode_semithue", [](const std::string& text) {
    return encode_semithue(parse_semithue(text)).instance;
  }, py::arg("text"));
  m.def("decode_semithue", [](const std::string& text, const std::string& word) {
    auto e = encode_semithue(parse_semithue(text));
    auto d = decode_semithue_solution(e, e.instance.sigma()->parse_word(word));
    std::vector<std::string> out;
    for (const auto& w : d.words) out.push_back(e.system.upsilon->format(w));
    return out;
  }, py::arg("text"), py::arg("word"));

  m.def("h_bound", [](std::size_t n, std::size_t k, std::size_t s, std::uint64_t budget) -> py::object {
    auto h = h_bound(n, k, s, budget);
    if (!h.value) return py::none();
    return py::cast(*h.value);
  }, py::arg("n"), py::arg("k"), py::arg("gamma_size"), py::arg("budget") = 5'000'000);

  m.def("is_subword", [](const std::string& s, const std::string& t) {
    return is_subword(chars(s), chars(t));
  }, py::arg("s"), py::arg("t"), "Subword order on the characters of two strings.");
  m.def("longest_suffix_carrier", [](const std::string& y, const std::string& z, const std::string& t) {
    return unchars(longest_suffix_carrier(chars(y), chars(z), chars(t)));
  });
  m.def("shortest_prefix_overflow", [](const std::string& z, const std::string& t) {
    return unchars(shortest_prefix_overflow(chars(z), chars(t)));
  });
  m.def("longest_prefix_host", [](const std::string& z, const std::string& t) {
    return unchars(longest_prefix_host(chars(z), chars(t)));
  });
  m.def("shortest_suffix_host", [](const std::string& z, const std::string& s, const std::string& t) {
    return unchars(shortest_suffix_host(chars(z), chars(s), chars(t)));
  });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs the command-line front end in process: (exit code, stdout, stderr).");
}
