// momtool: command-line front end for the momtech library.

#include <openssl/evp.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <regex>
#include <sstream>

#include "momtech/census.hpp"
#include "momtech/error.hpp"
#include "momtech/fillings.hpp"
#include "momtech/io.hpp"
#include "momtech/lobachevsky.hpp"
#include "momtech/momdetect.hpp"
#include "momtech/spectrum.hpp"
#include "momtech/volume.hpp"

using namespace momtech;

namespace {

constexpr const char* kVersion = "momtool " MOMTECH_VERSION;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::Structural: return 2;
    case ErrorKind::Precondition:
    case ErrorKind::Domain:
    case ErrorKind::Degenerate:
    case ErrorKind::Unsupported: return 3;
    case ErrorKind::Uncertifiable:
    case ErrorKind::AmbiguousSpectrum: return 4;
    case ErrorKind::Internal: return 5;
  }
  return 5;
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    fail(ErrorKind::Internal, "SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

void write_atomically(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    out.flush();
    if (!out) fail(ErrorKind::Precondition, "cannot write " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    fail(ErrorKind::Precondition, "cannot move report into place at " + path + ": " + ec.message());
  }
}

// Inputs read by the running command, recorded in the manifest.
struct Run {
  std::vector<std::pair<std::string, std::string>> inputs;  // path, sha256

  std::string read(const std::string& path) {
    std::string text = read_text_file(path);
    inputs.push_back({path, sha256_hex(text)});
    return text;
  }
};

Interval parse_angle(const std::string& s) {
  static const std::regex pi_form(R"(^(-?\d*)pi(?:/(\d+))?$)");
  std::smatch m;
  if (std::regex_match(s, m, pi_form)) {
    long num = 1;
    if (m[1].length() == 1 && m[1].str() == "-") num = -1;
    else if (m[1].length() > 0) num = std::stol(m[1].str());
    long den = m[2].matched ? std::stol(m[2].str()) : 1;
    if (den == 0) fail(ErrorKind::Parse, "angle '" + s + "' divides by zero");
    return pi() * Interval(static_cast<double>(num)) / Interval(static_cast<double>(den));
  }
  try {
    return parse_number(s);
  } catch (const Error& e) {
    fail(ErrorKind::Parse, "angle '" + s + "': " + e.what());
  }
}

Interval parse_value(const std::string& s, const std::string& what) {
  try {
    return parse_number(s);
  } catch (const Error& e) {
    fail(ErrorKind::Parse, what + " '" + s + "': " + e.what());
  }
}

std::string label_text(const std::optional<int>& label) { return label ? std::to_string(*label) : "-"; }

std::string cmd_lob(const std::string& theta_text) {
  Interval theta = parse_angle(theta_text);
  return "LOB theta=" + to_string(theta) + " value=" + to_string(lobachevsky(theta)) + "\n";
}

std::string cmd_volume(Run& run, const std::string& path) {
  Triangulation t = parse_triangulation(run.read(path), path);
  Interval v = triangulation_volume(t.solution());
  return "VOLUME name=" + t.name + " tetrahedra=" + std::to_string(t.neighbors.size()) +
         " cusps=" + std::to_string(t.cusps) + " delta=" + to_string(t.delta) + " volume=" + to_string(v) + "\n";
}

std::string spectrum_lines(const std::vector<OrthopairClass>& spectrum) {
  std::string out;
  for (const auto& c : spectrum)
    out += "CLASS " + std::to_string(c.index) + " ortho=" + to_string(c.ortho) + " e=" + to_string(c.e) +
           " witnesses=" + std::to_string(c.witnesses.size()) + " first=" + to_string(c.witnesses.front()) +
           " label=" + label_text(c.label) + "\n";
  return out;
}

std::string cmd_spectrum(Run& run, const std::string& path, const std::string& cutoff_text) {
  CuspDiagram d = parse_diagram(run.read(path), path);
  Interval cutoff = parse_value(cutoff_text, "cutoff");
  auto spectrum = ortho_spectrum(d, cutoff);
  std::string out = "SPECTRUM balls=" + std::to_string(d.balls().size()) + " cutoff=" + to_string(cutoff) +
                    " classes=" + std::to_string(spectrum.size()) + "\n";
  out += spectrum_lines(spectrum);
  for (const auto& t : enumerate_triples(d, spectrum))
    out += "TRIPLE type=" + type_string(t.type) + " multiplicity=" + std::to_string(t.multiplicity) + "\n";
  auto report = validate_diagram(d);
  if (report.ok()) out += "VALIDATION ok\n";
  for (const auto& issue : report.failures) out += std::string("VALIDATION ") + to_string(issue.code) + " " + issue.message + "\n";
  return out;
}

std::string cmd_momfind(Run& run, const std::string& path, int n, const std::string& cutoff_text) {
  CuspDiagram d = parse_diagram(run.read(path), path);
  Interval cutoff = parse_value(cutoff_text, "cutoff");
  auto spectrum = ortho_spectrum(d, cutoff);
  auto triples = enumerate_triples(d, spectrum);
  auto found = find_mom_structures(triples, n);
  std::string out = "MOMFIND n=" + std::to_string(n) + " classes=" + std::to_string(spectrum.size()) +
                    " triples=" + std::to_string(triples.size()) + " found=" + std::to_string(found.size()) + "\n";
  for (const auto& s : found) out += format_mom(s) + "\n";
  if (spectrum.size() >= 3) {
    AreaFlags flags;
    flags.no_111_triples = true;
    for (const auto& t : triples)
      if (t.type == std::array<int, 3>{1, 1, 1}) flags.no_111_triples = false;
    out += format_bound(area_lower_bound(spectrum[1].e, spectrum[2].e, flags)) + "\n";
  } else {
    out += "NOTE area bound needs three orthodistance classes below the cutoff\n";
  }
  return out;
}

std::string cmd_census(int mom, const std::string& resume, int workers) {
  CensusOptions options;
  options.workers = workers;
  options.checkpoint = resume;
  return format_census(mom, run_mom_census(mom, options));
}

std::string cmd_slopes(Run& run, const std::string& path, const std::string& parent_text, const std::string& target_text) {
  CuspLattice shape = parse_cusp_shape(run.read(path), path);
  auto bound = filling_bound(parse_value(parent_text, "parent volume"), parse_value(target_text, "target volume"));
  std::string out = format_fkp(bound) + "\n";
  out += "NOTE the cutoff needs no slope-length hypothesis; the volume bound for a single filling assumes its slope is "
         "longer than 2pi\n";
  for (const auto& s : enumerate_short_slopes(shape, bound.length_cutoff)) out += format_slope(s) + "\n";
  return out;
}

std::string cmd_chain(const std::string& bound_text) {
  Interval cusped = parse_value(bound_text, "cusped bound");
  Interval closed = closed_volume_chain(cusped);
  return "CHAIN cusped=" + to_string(cusped) + " factor=3.02 closed=" + to_string(closed) +
         "\nNOTE assumes an embedded tube of radius at least log(3)/2 about the filling geodesic\n";
}

std::string manifest_json(const std::vector<std::string>& args, const std::string& command, const Run& run,
                          const std::string& out_path, const std::string& report) {
  nlohmann::ordered_json m;
  m["command"] = command;
  m["arguments"] = args;
  m["inputs"] = nlohmann::ordered_json::array();
  for (const auto& [path, digest] : run.inputs) m["inputs"].push_back({{"path", path}, {"sha256", digest}});
  m["tool_version"] = kVersion;
  m["seed"] = 0;
  m["output"] = {{"path", out_path}, {"sha256", sha256_hex(report)}};
  return m.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rigorous numerics and census tools for Mom-technology computations", "momtool"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("--out", out_path, "Write the report here atomically, with a manifest beside it");

  std::string theta, file, cutoff = "2", resume, parent, target, cusped;
  int n = 3, mom = 2, workers = 0;

  auto* lob = app.add_subcommand("lob", "Lobachevsky function at an angle (number or k*pi/m form)");
  lob->add_option("theta", theta)->required();
  auto* volume = app.add_subcommand("volume", "Volume enclosure of a triangulation file");
  volume->add_option("triangulation", file)->required();
  auto* spectrum = app.add_subcommand("spectrum", "Orthodistance spectrum and triples of a cusp diagram");
  spectrum->add_option("diagram", file)->required();
  spectrum->add_option("--cutoff", cutoff, "Orthodistance cutoff")->required();
  auto* momfind = app.add_subcommand("momfind", "Combinatorial Mom-n structures of a cusp diagram");
  momfind->add_option("diagram", file)->required();
  momfind->add_option("--n", n, "Number of classes")->required()->check(CLI::Range(1, 12));
  momfind->add_option("--cutoff", cutoff, "Orthodistance cutoff")->capture_default_str();
  auto* census = app.add_subcommand("census", "Mom-2 or Mom-3 dipyramid gluing census");
  census->add_option("--mom", mom, "2 or 3")->required();
  census->add_option("--resume", resume, "Checkpoint file, created if missing");
  census->add_option("--workers", workers, "Worker threads (default MOMTECH_WORKERS or 1)")->check(CLI::NonNegativeNumber);
  auto* slopes = app.add_subcommand("slopes", "Dehn filling slopes below the FKP length cutoff");
  slopes->add_option("shape", file)->required();
  slopes->add_option("--parent-vol", parent)->required();
  slopes->add_option("--target-vol", target)->required();
  auto* chain = app.add_subcommand("chain", "Closed-manifold volume bound from a cusped one");
  chain->add_option("--cusped-bound", cusped)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    Run run;
    std::string report, command;
    if (*lob) command = "lob", report = cmd_lob(theta);
    else if (*volume) command = "volume", report = cmd_volume(run, file);
    else if (*spectrum) command = "spectrum", report = cmd_spectrum(run, file, cutoff);
    else if (*momfind) command = "momfind", report = cmd_momfind(run, file, n, cutoff);
    else if (*census) command = "census", report = cmd_census(mom, resume, workers);
    else if (*slopes) command = "slopes", report = cmd_slopes(run, file, parent, target);
    else command = "chain", report = cmd_chain(cusped);
    (void)chain;

    if (out_path.empty()) {
      std::cout << report;
    } else {
      write_atomically(out_path, report);
      write_atomically(out_path + ".manifest.json", manifest_json(args, command, run, out_path, report));
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "momtool: " << to_string(e.kind()) << " error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "momtool: internal error: " << e.what() << "\n";
    return 5;
  }
}
