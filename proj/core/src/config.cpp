#include "delam/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <sstream>

namespace delam {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void missing(const ConfigSection& sec, const std::string& key) {
  throw ConfigError("[" + sec.name + "] missing required key '" + key + "'");
}

double parseNumber(const ConfigSection& sec, const std::string& key,
                   const std::string& raw) {
  size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(raw, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != raw.size())
    throw ConfigError("[" + sec.name + "] key '" + key + "': not a number: '" + raw + "'");
  return v;
}

long parseInteger(const ConfigSection& sec, const std::string& key,
                  const std::string& raw) {
  size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(raw, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != raw.size())
    throw ConfigError("[" + sec.name + "] key '" + key + "': not an integer: '" + raw + "'");
  return v;
}

}  // namespace

double ConfigSection::number(const std::string& key) const {
  auto it = values.find(key);
  if (it == values.end()) missing(*this, key);
  return parseNumber(*this, key, it->second);
}

double ConfigSection::number(const std::string& key, double fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : parseNumber(*this, key, it->second);
}

long ConfigSection::integer(const std::string& key) const {
  auto it = values.find(key);
  if (it == values.end()) missing(*this, key);
  return parseInteger(*this, key, it->second);
}

long ConfigSection::integer(const std::string& key, long fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : parseInteger(*this, key, it->second);
}

bool ConfigSection::flag(const std::string& key, bool fallback) const {
  auto it = values.find(key);
  if (it == values.end()) return fallback;
  std::string v = it->second;
  std::transform(v.begin(), v.end(), v.begin(), ::tolower);
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  throw ConfigError("[" + name + "] key '" + key + "': not a boolean: '" + it->second + "'");
}

std::string ConfigSection::text(const std::string& key) const {
  auto it = values.find(key);
  if (it == values.end()) missing(*this, key);
  return it->second;
}

std::string ConfigSection::text(const std::string& key, const std::string& fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : it->second;
}

std::vector<long> ConfigSection::integerList(const std::string& key) const {
  auto it = values.find(key);
  std::vector<long> out;
  if (it == values.end()) return out;
  std::stringstream ss(it->second);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(parseInteger(*this, key, item));
  }
  return out;
}

const ConfigSection* ConfigFile::find(const std::string& name) const {
  for (const auto& s : sections)
    if (s.name == name) return &s;
  return nullptr;
}

std::vector<const ConfigSection*> ConfigFile::findAll(const std::string& name) const {
  std::vector<const ConfigSection*> out;
  for (const auto& s : sections)
    if (s.name == name) out.push_back(&s);
  return out;
}

ConfigFile parse_config_text(const std::string& text) {
  ConfigFile file;
  std::stringstream in(text);
  std::string line;
  int lineno = 0;
  ConfigSection* cur = nullptr;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) + ": unterminated section header");
      ConfigSection sec;
      sec.name = trim(line.substr(1, line.size() - 2));
      sec.line = lineno;
      if (sec.name.empty())
        throw ConfigError("line " + std::to_string(lineno) + ": empty section name");
      file.sections.push_back(std::move(sec));
      cur = &file.sections.back();
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    if (!cur)
      throw ConfigError("line " + std::to_string(lineno) + ": key outside any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (cur->values.count(key))
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key +
                        "' in section [" + cur->name + "]");
    cur->values[key] = val;
  }
  return file;
}

ConfigFile parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

namespace {

void require(const ConfigFile& file, const char* name, std::vector<std::string>& errors) {
  if (!file.find(name)) errors.push_back(std::string("missing required section [") + name + "]");
}

}  // namespace

RunConfig run_config_from(const ConfigFile& file) {
  std::vector<std::string> errors;
  require(file, "bulk", errors);
  require(file, "interface", errors);
  require(file, "specimen", errors);
  if (!errors.empty()) {
    std::string msg;
    for (const auto& e : errors) msg += e + "\n";
    throw ConfigError(msg);
  }

  RunConfig rc;
  auto collect = [&errors](const std::function<void()>& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      errors.push_back(e.what());
    }
  };

  collect([&] {
    const ConfigSection& s = *file.find("bulk");
    BulkElastic& b = rc.material.bulk;
    b.E11 = s.number("E11");
    b.E22 = s.number("E22");
    b.E33 = s.number("E33", b.E22);
    b.G12 = s.number("G12");
    b.G13 = s.number("G13", b.G12);
    b.G23 = s.number("G23");
    b.nu12 = s.number("nu12");
    b.nu13 = s.number("nu13", b.nu12);
    b.nu23 = s.number("nu23");
    b.validate();
  });

  collect([&] {
    const ConfigSection& s = *file.find("interface");
    InterfaceStatic& i = rc.material.iface;
    i.G_Ic = s.number("G_Ic");
    i.G_sc = s.number("G_sc");
    i.eta = s.number("eta");
    i.tau_so = s.number("tau_so");
    i.tau_Io = s.number("tau_Io", derive_tensile_strength(i.tau_so, i.G_Ic, i.G_sc));
    i.K = s.number("K", 1e5);
    i.validate();
  });

  collect([&] {
    const ConfigSection* s = file.find("fatigue");
    if (!s) return;  // purely quasi-static run
    FatigueProps& f = rc.material.fatigue;
    f.p_I = s->number("p_I");
    f.A_I = s->number("A_I");
    f.p_s = s->number("p_s");
    f.A_s = s->number("A_s");
    f.p_m = s->number("p_m");
    f.A_m = s->number("A_m");
    f.G_Ith = s->number("G_Ith");
    f.G_sth = s->number("G_sth");
    if (s->has("eta2")) f.eta2 = s->number("eta2");
    f.validate();
  });

  collect([&] {
    const ConfigSection& s = *file.find("specimen");
    ScenarioSpec& sp = rc.scenario;
    sp.specimen = s.text("type");
    sp.length = s.number("length", sp.length);
    sp.width = s.number("width", sp.width);
    sp.arm_thickness = s.number("arm_thickness", sp.arm_thickness);
    sp.insert_length = s.number("insert_length", sp.insert_length);
    sp.le = s.number("le", sp.le);
    sp.le_w = s.number("le_w", sp.le);
    sp.thickness_elems = static_cast<int>(s.integer("thickness_elems", sp.thickness_elems));
    sp.da_target = s.number("da_target", sp.da_target);
    sp.phi_target = s.number("phi_target", sp.phi_target);
    sp.support_margin = s.number("support_margin", sp.support_margin);
    sp.reinf_start = s.number("reinf_start", sp.reinf_start);
    sp.reinf_thickness = s.number("reinf_thickness", sp.reinf_thickness);
    sp.validate();
  });

  collect([&] {
    const ConfigSection* s = file.find("solver");
    if (!s) return;
    rc.solver.tol_force = s->number("tol_force", rc.solver.tol_force);
    rc.solver.tol_disp = s->number("tol_disp", rc.solver.tol_disp);
    rc.solver.max_iterations =
        static_cast<int>(s->integer("max_iterations", rc.solver.max_iterations));
    rc.solver.max_cutbacks = static_cast<int>(s->integer("max_cutbacks", rc.solver.max_cutbacks));
    rc.solver.consistent_tangent = s->flag("consistent_tangent", rc.solver.consistent_tangent);
    if (rc.solver.tol_force <= 0 || rc.solver.tol_disp <= 0)
      throw ConfigError("[solver] tolerances must be positive");
    if (rc.solver.max_iterations < 1) throw ConfigError("[solver] max_iterations must be >= 1");
  });

  collect([&] {
    const ConfigSection* s = file.find("output");
    if (!s) return;
    rc.checkpoint_every = s->integer("checkpoint_every", 0);
    if (rc.checkpoint_every < 0) throw ConfigError("[output] checkpoint_every must be >= 0");
  });

  collect([&] {
    const auto steps = file.findAll("step");
    if (steps.empty()) throw ConfigError("no [step] sections: nothing to run");
    bool needs_fatigue = false;
    for (const ConfigSection* s : steps) {
      LoadStep step;
      const std::string kind = s->text("kind");
      if (kind == "static") {
        step.kind = LoadStep::Kind::Static;
        step.target = s->number("target");
        step.initial_increment = s->number("initial_increment", 0.0);
        if (step.initial_increment < 0)
          throw ConfigError("[step] initial_increment must be >= 0");
      } else if (kind == "fatigue") {
        step.kind = LoadStep::Kind::Fatigue;
        step.target = s->number("target");
        step.R = s->number("R");
        step.cycles = s->integer("cycles");
        step.checkpoints = s->integerList("checkpoints");
        std::sort(step.checkpoints.begin(), step.checkpoints.end());
        if (step.R < 0.0 || step.R >= 1.0)
          throw ConfigError("[step] load ratio R must lie in [0, 1)");
        if (step.cycles < 1) throw ConfigError("[step] cycles must be >= 1");
        for (long c : step.checkpoints)
          if (c < 1 || c > step.cycles)
            throw ConfigError("[step] checkpoint cycle outside [1, cycles]");
        needs_fatigue = true;
      } else {
        throw ConfigError("[step] unknown kind '" + kind + "' (static | fatigue)");
      }
      rc.steps.push_back(std::move(step));
    }
    if (needs_fatigue && !file.find("fatigue"))
      throw ConfigError("fatigue steps present but section [fatigue] is missing");
  });

  if (!errors.empty()) {
    std::string msg;
    for (const auto& e : errors) msg += e + "\n";
    throw ConfigError(msg);
  }
  return rc;
}

RunConfig load_run_config(const std::string& path) {
  return run_config_from(parse_config_file(path));
}

}  // namespace delam
