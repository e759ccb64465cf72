#include "symq/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "symq/errors.hpp"
#include "symq/tolerances.hpp"

namespace symq {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& s) {
  const auto pos = s.find('#');
  return pos == std::string::npos ? s : s.substr(0, pos);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

double parse_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw ParseError("trailing characters in number: " + s);
    return v;
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed number: " + s);
  }
}

}  // namespace

Complex parse_complex(const std::string& token) {
  std::string s = trim(token);
  if (s.empty()) throw ParseError("empty complex entry");
  const bool imag_tail = s.back() == 'i' || s.back() == 'I';
  // split point: last '+'/'-' that is not the leading sign and not part of an
  // exponent
  std::size_t split = std::string::npos;
  for (std::size_t p = s.size(); p-- > 1;) {
    if ((s[p] == '+' || s[p] == '-') && s[p - 1] != 'e' && s[p - 1] != 'E') {
      split = p;
      break;
    }
  }
  if (imag_tail) {
    std::string imag_text = s.substr(0, s.size() - 1);
    std::string real_text = "0";
    if (split != std::string::npos) {
      real_text = s.substr(0, split);
      imag_text = s.substr(split, s.size() - 1 - split);
    }
    if (imag_text.empty() || imag_text == "+" || imag_text == "-") imag_text += "1";
    return Complex(parse_double(real_text), parse_double(imag_text));
  }
  return Complex(parse_double(s), 0.0);
}

std::string format_complex(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", z.real());
  std::string out = buf;
  std::snprintf(buf, sizeof buf, "%+.17g", z.imag());
  out += buf;
  out += 'i';
  return out;
}

Perm parse_perm_text(const std::string& text, int degree, const std::string& what) {
  const std::string s = trim(text);
  if (s.empty()) throw ParseError(what + ": empty permutation");
  if (s.front() == '[') {
    if (s.back() != ']') throw ParseError(what + ": unterminated image list");
    std::string body = s.substr(1, s.size() - 2);
    for (char& c : body)
      if (c == ',') c = ' ';
    Perm p;
    for (const auto& tok : split_ws(body)) {
      try {
        p.push_back(std::stoi(tok));
      } catch (...) {
        throw ParseError(what + ": bad index '" + tok + "'");
      }
    }
    if (static_cast<int>(p.size()) != degree)
      throw ParseError(what + ": image list has " + std::to_string(p.size()) +
                       " entries, expected " + std::to_string(degree));
    if (!is_permutation(p)) throw NotBijective(what + ": not a permutation");
    return p;
  }
  if (s.front() != '(') throw ParseError(what + ": expected cycles or image list");
  Perm p = identity_perm(degree);
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[pos]))) {
      ++pos;
      continue;
    }
    if (s[pos] != '(') throw ParseError(what + ": expected '('");
    const auto close = s.find(')', pos);
    if (close == std::string::npos) throw ParseError(what + ": unterminated cycle");
    const auto toks = split_ws(s.substr(pos + 1, close - pos - 1));
    std::vector<int> cyc;
    for (const auto& t : toks) {
      int v = 0;
      try {
        v = std::stoi(t);
      } catch (...) {
        throw ParseError(what + ": bad index '" + t + "'");
      }
      if (v < 0 || v >= degree)
        throw ParseError(what + ": index " + t + " out of range for degree " +
                         std::to_string(degree));
      cyc.push_back(v);
    }
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      const int from = cyc[i];
      const int to = cyc[(i + 1) % cyc.size()];
      if (p[from] != from) throw NotBijective(what + ": index repeated across cycles");
      p[from] = to;
    }
    pos = close + 1;
  }
  if (!is_permutation(p)) throw NotBijective(what + ": not a permutation");
  return p;
}

int ScenarioFile::parameter_index(const std::string& nm) const {
  for (std::size_t i = 0; i < parameters.size(); ++i)
    if (parameters[i].name == nm) return static_cast<int>(i);
  return -1;
}

int ScenarioFile::channel_index(const std::string& nm) const {
  for (std::size_t i = 0; i < channels.size(); ++i)
    if (channels[i].name == nm) return static_cast<int>(i);
  return -1;
}

int ScenarioFile::base_index() const {
  if (parameters.empty()) return -1;
  if (base_experiment.empty()) return 0;
  const int i = parameter_index(base_experiment);
  if (i < 0) throw UnknownExperiment("base experiment '" + base_experiment + "' not declared");
  return i;
}

namespace {

struct RawSection {
  std::string header;  // full text inside brackets
  std::vector<std::pair<int, std::string>> lines;  // line number, content
};

struct ErrorList {
  std::vector<std::string> messages;
  void add(int line, const std::string& msg) {
    messages.push_back("line " + std::to_string(line) + ": " + msg);
  }
  void add(const std::string& msg) { messages.push_back(msg); }
};

std::pair<std::string, std::string> split_key_value(const std::string& line) {
  const auto eq = line.find('=');
  if (eq == std::string::npos) return {"", ""};
  return {trim(line.substr(0, eq)), trim(line.substr(eq + 1))};
}

}  // namespace

ScenarioFile parse_scenario(const std::string& text, const std::string& origin) {
  std::vector<RawSection> sections;
  ErrorList errors;
  {
    std::istringstream is(text);
    std::string raw;
    int lineno = 0;
    RawSection* cur = nullptr;
    while (std::getline(is, raw)) {
      ++lineno;
      const std::string line = trim(strip_comment(raw));
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') {
          errors.add(lineno, "unterminated section header");
          continue;
        }
        sections.push_back(RawSection{trim(line.substr(1, line.size() - 2)), {}});
        cur = &sections.back();
        continue;
      }
      if (!cur) {
        errors.add(lineno, "content before any section header");
        continue;
      }
      cur->lines.emplace_back(lineno, line);
    }
  }

  ScenarioFile out;
  // default name from the file path stem
  {
    std::string stem = origin;
    const auto slash = stem.find_last_of('/');
    if (slash != std::string::npos) stem = stem.substr(slash + 1);
    const auto dot = stem.rfind('.');
    if (dot != std::string::npos) stem = stem.substr(0, dot);
    out.name = stem;
  }

  // [phi] first: everything else needs the degree
  bool have_phi = false;
  for (const auto& sec : sections) {
    if (sec.header != "phi") continue;
    have_phi = true;
    std::set<std::string> seen;
    for (const auto& [ln, line] : sec.lines) {
      if (seen.count(line)) {
        errors.add(ln, "duplicate configuration label '" + line + "'");
        continue;
      }
      seen.insert(line);
      out.phi.push_back(line);
    }
    if (out.phi.empty()) errors.add("[phi] section is empty");
  }
  if (!have_phi) errors.add("missing [phi] section");
  const int degree = static_cast<int>(out.phi.size());

  auto value_index = [](const std::vector<std::string>& vals, const std::string& v) {
    for (std::size_t i = 0; i < vals.size(); ++i)
      if (vals[i] == v) return static_cast<int>(i);
    return -1;
  };

  for (const auto& sec : sections) {
    if (sec.header == "phi") continue;
    if (sec.header == "generators") {
      for (const auto& [ln, line] : sec.lines) {
        auto [key, value] = split_key_value(line);
        if (key.empty()) {
          errors.add(ln, "expected 'name = permutation'");
          continue;
        }
        try {
          out.generators.emplace_back(key,
                                      parse_perm_text(value, degree, "generator '" + key + "'"));
        } catch (const Error& e) {
          errors.add(ln, e.what());
        }
      }
    } else if (sec.header.rfind("parameter ", 0) == 0) {
      ParameterMap pm;
      pm.name = trim(sec.header.substr(10));
      std::vector<std::string> map_labels;
      for (const auto& [ln, line] : sec.lines) {
        auto [key, value] = split_key_value(line);
        if (key == "values") {
          bool any_numeric = false;
          for (const auto& item : split_on(value, ',')) {
            const auto colon = item.find(':');
            if (colon == std::string::npos) {
              pm.values.push_back(trim(item));
            } else {
              pm.values.push_back(trim(item.substr(0, colon)));
              try {
                if (!pm.numeric) pm.numeric.emplace();
                pm.numeric->push_back(parse_double(trim(item.substr(colon + 1))));
                any_numeric = true;
              } catch (const Error& e) {
                errors.add(ln, e.what());
              }
            }
          }
          if (any_numeric && pm.numeric->size() != pm.values.size())
            errors.add(ln, "parameter " + pm.name + ": either all or no values take eigenvalues");
        } else if (key == "map") {
          map_labels = split_ws(value);
        } else if (key == "maximal") {
          pm.maximal = (value == "true" || value == "1" || value == "yes");
        } else {
          errors.add(ln, "unknown parameter key '" + key + "'");
        }
      }
      if (pm.values.empty()) errors.add("parameter " + pm.name + ": missing values");
      if (static_cast<int>(map_labels.size()) != degree) {
        errors.add("parameter " + pm.name + ": map has " + std::to_string(map_labels.size()) +
                   " entries, expected " + std::to_string(degree));
      } else {
        for (const auto& lab : map_labels) {
          const int vi = value_index(pm.values, lab);
          if (vi < 0) {
            errors.add("parameter " + pm.name + ": map label '" + lab + "' not in values");
            pm.table.push_back(0);
          } else {
            pm.table.push_back(vi);
          }
        }
      }
      out.parameters.push_back(std::move(pm));
    } else if (sec.header.rfind("experiment ", 0) == 0) {
      ScenarioFile::Channel ch;
      ch.name = trim(sec.header.substr(11));
      for (const auto& [ln, line] : sec.lines) {
        auto [key, value] = split_key_value(line);
        if (key == "mechanism") {
          if (value != "first" && value != "either")
            errors.add(ln, "mechanism must be 'first' or 'either'");
          ch.mechanism = value;
        } else if (key.rfind("likelihood ", 0) == 0) {
          try {
            ch.likelihood.emplace_back(trim(key.substr(11)), parse_rational(value));
          } catch (const Error& e) {
            errors.add(ln, e.what());
          }
        } else {
          errors.add(ln, "unknown experiment key '" + key + "'");
        }
      }
      out.channels.push_back(std::move(ch));
    } else if (sec.header == "explicit_rep") {
      ScenarioFile::ExplicitRep rep;
      std::string pending_name;
      std::vector<std::vector<Complex>> pending_rows;
      auto flush = [&](int ln) {
        if (pending_name.empty()) return;
        const std::size_t n = pending_rows.empty() ? 0 : pending_rows[0].size();
        if (n == 0 || pending_rows.size() != n) {
          errors.add(ln, "matrix " + pending_name + " is not square");
        } else {
          Matrix m(n, n);
          for (std::size_t r = 0; r < n; ++r) {
            if (pending_rows[r].size() != n) {
              errors.add(ln, "matrix " + pending_name + " has ragged rows");
              pending_name.clear();
              pending_rows.clear();
              return;
            }
            for (std::size_t c = 0; c < n; ++c) m(r, c) = pending_rows[r][c];
          }
          rep.generator_images.emplace_back(pending_name, std::move(m));
        }
        pending_name.clear();
        pending_rows.clear();
      };
      for (const auto& [ln, line] : sec.lines) {
        auto [key, value] = split_key_value(line);
        if (key == "projective") {
          flush(ln);
          rep.projective = (value == "true" || value == "1" || value == "yes");
        } else if (key.rfind("matrix ", 0) == 0) {
          flush(ln);
          pending_name = trim(key.substr(7));
          if (!value.empty()) errors.add(ln, "matrix rows start on the following lines");
        } else if (!pending_name.empty()) {
          std::vector<Complex> row;
          try {
            for (const auto& tok : split_ws(line)) row.push_back(parse_complex(tok));
            pending_rows.push_back(std::move(row));
          } catch (const Error& e) {
            errors.add(ln, e.what());
          }
        } else {
          errors.add(ln, "unexpected line in [explicit_rep]");
        }
      }
      flush(sec.lines.empty() ? 0 : sec.lines.back().first);
      out.explicit_rep = std::move(rep);
    } else if (sec.header == "design") {
      ScenarioFile::Design d;
      for (const auto& [ln, line] : sec.lines) {
        auto [key, value] = split_key_value(line);
        if (key == "units") {
          try {
            d.units = std::stoi(value);
          } catch (...) {
            errors.add(ln, "bad unit count '" + value + "'");
          }
        } else if (key == "block") {
          std::vector<int> blk;
          for (const auto& tok : split_ws(value)) {
            try {
              blk.push_back(std::stoi(tok));
            } catch (...) {
              errors.add(ln, "bad unit index '" + tok + "'");
            }
          }
          d.blocks.push_back(std::move(blk));
        } else if (key.rfind("treatment", 0) == 0) {
          const auto colon = value.find(':');
          std::string tname = value, items;
          if (colon != std::string::npos) {
            tname = trim(value.substr(0, colon));
            items = value.substr(colon + 1);
          }
          std::vector<int> units;
          for (const auto& tok : split_ws(items)) {
            try {
              units.push_back(std::stoi(tok));
            } catch (...) {
              errors.add(ln, "bad unit index '" + tok + "'");
            }
          }
          d.treatments.emplace_back(tname, std::move(units));
        } else {
          errors.add(ln, "unknown design key '" + key + "'");
        }
      }
      out.design = std::move(d);
    } else if (sec.header == "options") {
      for (const auto& [ln, line] : sec.lines) {
        auto [key, value] = split_key_value(line);
        if (key == "name") {
          out.name = value;
        } else if (key == "base") {
          out.base_experiment = value;
        } else if (key == "trial_model") {
          out.trial_model = value;
        } else if (key == "group_cap") {
          try {
            out.group_cap = std::stoi(value);
          } catch (...) {
            errors.add(ln, "bad group_cap '" + value + "'");
          }
        } else {
          errors.add(ln, "unknown option '" + key + "'");
        }
      }
    } else if (sec.header == "expect") {
      for (const auto& [ln, line] : sec.lines) {
        auto [key, value] = split_key_value(line);
        const auto parts = split_ws(key);
        if (parts.size() == 3 && parts[0] == "outcome") {
          try {
            out.expect.outcome[parts[1]][parts[2]] = parse_rational(value);
          } catch (const Error& e) {
            errors.add(ln, e.what());
          }
        } else if (parts.size() == 2 && parts[0] == "subgroup") {
          std::vector<Perm> perms;
          try {
            for (const auto& item : split_on(value, ','))
              perms.push_back(parse_perm_text(item, degree, "expected subgroup element"));
            out.expect.subgroup[parts[1]] = std::move(perms);
          } catch (const Error& e) {
            errors.add(ln, e.what());
          }
        } else {
          errors.add(ln, "unknown expectation '" + key + "'");
        }
      }
    } else {
      errors.add("unknown section [" + sec.header + "]");
    }
  }

  if (!errors.messages.empty()) {
    std::string msg = origin + ": " + std::to_string(errors.messages.size()) + " error(s)";
    for (const auto& m : errors.messages) msg += "\n  " + m;
    throw ParseError(msg);
  }
  return out;
}

ScenarioFile load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_scenario(os.str(), path);
}

std::string serialize_scenario(const ScenarioFile& s) {
  std::ostringstream os;
  os << "[phi]\n";
  for (const auto& p : s.phi) os << p << "\n";
  if (!s.generators.empty()) {
    os << "\n[generators]\n";
    for (const auto& [nm, p] : s.generators) os << nm << " = " << cycle_notation(p) << "\n";
  }
  for (const auto& pm : s.parameters) {
    os << "\n[parameter " << pm.name << "]\n";
    os << "values = ";
    for (int k = 0; k < pm.value_count(); ++k) {
      if (k) os << ", ";
      os << pm.values[k];
      if (pm.numeric) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", (*pm.numeric)[k]);
        os << ":" << buf;
      }
    }
    os << "\nmap =";
    for (int v : pm.table) os << " " << pm.values[v];
    os << "\n";
    if (!pm.maximal) os << "maximal = false\n";
  }
  for (const auto& ch : s.channels) {
    os << "\n[experiment " << ch.name << "]\n";
    if (!ch.mechanism.empty()) os << "mechanism = " << ch.mechanism << "\n";
    for (const auto& [hyp, r] : ch.likelihood)
      os << "likelihood " << hyp << " = " << to_string(r) << "\n";
  }
  if (s.explicit_rep) {
    os << "\n[explicit_rep]\n";
    os << "projective = " << (s.explicit_rep->projective ? "true" : "false") << "\n";
    for (const auto& [nm, m] : s.explicit_rep->generator_images) {
      os << "matrix " << nm << " =\n";
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        os << " ";
        for (Eigen::Index c = 0; c < m.cols(); ++c) os << " " << format_complex(m(r, c));
        os << "\n";
      }
    }
  }
  if (s.design) {
    os << "\n[design]\n";
    os << "units = " << s.design->units << "\n";
    for (const auto& blk : s.design->blocks) {
      os << "block =";
      for (int u : blk) os << " " << u;
      os << "\n";
    }
    for (const auto& [nm, units] : s.design->treatments) {
      os << "treatment = " << nm << ":";
      for (int u : units) os << " " << u;
      os << "\n";
    }
  }
  os << "\n[options]\n";
  os << "name = " << s.name << "\n";
  if (!s.base_experiment.empty()) os << "base = " << s.base_experiment << "\n";
  if (!s.trial_model.empty()) os << "trial_model = " << s.trial_model << "\n";
  if (s.group_cap != kDefaultGroupCap) os << "group_cap = " << s.group_cap << "\n";
  if (!s.expect.outcome.empty() || !s.expect.subgroup.empty()) {
    os << "\n[expect]\n";
    for (const auto& [ch, m] : s.expect.outcome)
      for (const auto& [hyp, r] : m)
        os << "outcome " << ch << " " << hyp << " = " << to_string(r) << "\n";
    for (const auto& [pm, perms] : s.expect.subgroup) {
      os << "subgroup " << pm << " = ";
      for (std::size_t i = 0; i < perms.size(); ++i) {
        if (i) os << ", ";
        os << cycle_notation(perms[i]);
      }
      os << "\n";
    }
  }
  return os.str();
}

BuiltScenario build_scenario(const ScenarioFile& file) {
  const int degree = static_cast<int>(file.phi.size());
  if (degree == 0) throw ValidationError("scenario has no configurations");
  if (degree > 2000) throw CapExceeded("configuration set exceeds the 2000-point cap");
  std::vector<Perm> gens;
  for (const auto& [nm, p] : file.generators) gens.push_back(p);
  BuiltScenario b;
  b.file = file;
  b.group = generate_group(gens, degree, file.group_cap);
  b.action = defining_action(b.group);
  for (const auto& pm : file.parameters) {
    if (pm.domain_size() != degree)
      throw ValidationError("parameter " + pm.name + " does not cover the configuration set");
    pm.validate();
  }
  (void)file.base_index();  // throws for an unknown base
  if (file.explicit_rep) {
    const auto& rep = *file.explicit_rep;
    if (rep.generator_images.size() != file.generators.size())
      throw ValidationError("explicit_rep must supply exactly one matrix per generator");
    Eigen::Index n = -1;
    for (const auto& [nm, m] : rep.generator_images) {
      bool known = false;
      for (const auto& [gn, gp] : file.generators) known = known || gn == nm;
      if (!known) throw ValidationError("explicit_rep names unknown generator '" + nm + "'");
      if (n < 0) n = m.rows();
      if (m.rows() != n || m.cols() != n)
        throw ValidationError("explicit_rep matrices must share one square shape");
      if (!approx_unitary(m, 1e-10))
        throw UnitarityViolation("explicit_rep matrix for '" + nm + "' is not unitary");
    }
    if (n > 64) throw TooLarge("explicit representation dimension exceeds 64");
    for (const auto& pm : file.parameters)
      if (pm.value_count() != n)
        throw ValidationError("parameter " + pm.name + " has " +
                              std::to_string(pm.value_count()) +
                              " values but the explicit representation is " + std::to_string(n) +
                              "-dimensional");
  }
  if (file.design) {
    const auto& d = *file.design;
    if (d.units < 1) throw ValidationError("design needs at least one unit");
    if (d.units > 64) throw TooLarge("design exceeds the 64-unit cap");
    if (!d.blocks.empty()) {
      std::vector<int> seen(d.units, 0);
      for (const auto& blk : d.blocks) {
        if (blk.empty()) throw ValidationError("design has an empty block");
        for (int u : blk) {
          if (u < 0 || u >= d.units) throw ValidationError("design block index out of range");
          if (seen[u]++) throw ValidationError("design blocks are not disjoint");
        }
      }
      for (int u = 0; u < d.units; ++u)
        if (!seen[u]) throw ValidationError("design blocks do not cover every unit");
    }
  }
  return b;
}

BuiltScenario load_and_build(const std::string& path) { return build_scenario(load_scenario(path)); }

}  // namespace symq
