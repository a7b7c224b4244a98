// SPDX-License-Identifier: Apache-2.0
#include "plcgrid/channel_io.hpp"

#include <cmath>
#include <string>

#include "plcgrid/errors.hpp"
#include "plcgrid/text.hpp"

namespace plcgrid {

namespace {

struct Document {
  text::KeyValues preamble;
  std::vector<std::string_view> header;
  std::string header_line;
  std::vector<std::pair<std::size_t, std::string>> rows;
};

bool is_preamble(std::string_view line) {
  return line.find('=') != std::string_view::npos && line.find(',') == std::string_view::npos;
}

Document read_document(std::istream& in) {
  Document doc;
  text::LineReader reader(in);
  std::string raw;
  bool have_header = false;
  while (reader.next(raw)) {
    const auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (!have_header) {
      if (is_preamble(line)) {
        const auto eq = line.find('=');
        const auto key = std::string(text::trim(line.substr(0, eq)));
        if (key.empty()) throw ParseError(reader.line_number(), "empty key");
        if (doc.preamble.contains(key)) {
          throw ParseError(reader.line_number(), "duplicate key '" + key + "'");
        }
        doc.preamble.set(key, std::string(text::trim(line.substr(eq + 1))),
                         reader.line_number());
        continue;
      }
      doc.header_line = std::string(line);
      have_header = true;
      continue;
    }
    doc.rows.emplace_back(reader.line_number(), std::string(line));
  }
  if (!have_header) throw ParseError(reader.line_number(), "missing column header");
  doc.header = text::split(doc.header_line);
  for (auto& h : doc.header) h = text::trim(h);
  return doc;
}

}  // namespace

MultipathChannel read_channel(std::istream& in) {
  const auto doc = read_document(in);
  const bool has_imag = doc.header.size() == 3 && doc.header[2] == "gain_imag";
  if (doc.header.size() < 2 || doc.header[0] != "gain" || doc.header[1] != "delay_us" ||
      (doc.header.size() == 3 && !has_imag) || doc.header.size() > 3) {
    throw ParseError(0, "channel header must be 'gain,delay_us[,gain_imag]'");
  }
  for (const auto& key : doc.preamble.keys()) {
    if (key != "v_p" && key != "a0" && key != "a1" && key != "k") {
      throw ParseError(0, "unknown channel key '" + key + "'");
    }
  }
  const double v_p = doc.preamble.require_double("v_p");
  const Attenuation att{doc.preamble.get_double("a0", 0.0),
                        doc.preamble.get_double("a1", 0.0),
                        doc.preamble.get_double("k", 1.0)};
  std::vector<Path> paths;
  for (const auto& [line_no, row] : doc.rows) {
    const auto fields = text::split(row);
    if (fields.size() != doc.header.size()) {
      throw ParseError(line_no, "expected " + std::to_string(doc.header.size()) + " fields");
    }
    const double re = text::parse_double(text::trim(fields[0]), line_no, "gain");
    const double delay_us = text::parse_double(text::trim(fields[1]), line_no, "delay_us");
    const double im = has_imag ? text::parse_double(text::trim(fields[2]), line_no, "gain_imag")
                               : 0.0;
    if (!std::isfinite(delay_us) || delay_us < 0.0) {
      throw ParseError(line_no, "delay must be finite and non-negative");
    }
    paths.push_back(Path::constant(Complex(re, im), delay_us * 1e-6));
  }
  if (paths.empty()) throw ParseError(0, "channel file lists no paths");
  try {
    return MultipathChannel(std::move(paths), att, v_p);
  } catch (const ModelError& e) {
    throw ParseError(0, e.what());
  }
}

PropagationConstant parse_gamma_model(std::string_view spec, std::size_t line) {
  spec = text::trim(spec);
  const auto open = spec.find('(');
  if (open == std::string_view::npos || spec.back() != ')') {
    throw ParseError(line, "gamma model must look like name(key=value;...)");
  }
  const auto name = text::trim(spec.substr(0, open));
  text::KeyValues args;
  const auto inner = spec.substr(open + 1, spec.size() - open - 2);
  for (auto part : text::split(inner, ';')) {
    part = text::trim(part);
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string_view::npos) throw ParseError(line, "gamma argument without '='");
    const auto key = std::string(text::trim(part.substr(0, eq)));
    if (args.contains(key)) throw ParseError(line, "duplicate gamma argument '" + key + "'");
    args.set(key, std::string(text::trim(part.substr(eq + 1))), line);
  }
  const auto number = [&](const std::string& key, std::optional<double> fallback) {
    if (!args.contains(key)) {
      if (!fallback) throw ParseError(line, "gamma model needs '" + key + "'");
      return *fallback;
    }
    return text::parse_double(args.require(key), line, key);
  };
  try {
    if (name == "lossless") {
      for (const auto& k : args.keys()) {
        if (k != "vp") throw ParseError(line, "unknown lossless argument '" + k + "'");
      }
      return lossless_line(number("vp", std::nullopt));
    }
    if (name == "lossy") {
      for (const auto& k : args.keys()) {
        if (k != "vp" && k != "a0" && k != "a1" && k != "k") {
          throw ParseError(line, "unknown lossy argument '" + k + "'");
        }
      }
      const Attenuation att{number("a0", 0.0), number("a1", 0.0), number("k", 1.0)};
      if (att.a0 < 0.0 || att.a1 < 0.0 || att.exponent < 0.0) {
        throw ParseError(line, "attenuation coefficients must be non-negative");
      }
      return lossy_line(number("vp", std::nullopt), att);
    }
  } catch (const ModelError& e) {
    throw ParseError(line, e.what());
  }
  throw ParseError(line, "unknown gamma model '" + std::string(name) + "'");
}

ChainSpec read_chain(std::istream& in) {
  const auto doc = read_document(in);
  const auto& h = doc.header;
  const bool has_role = h.size() == 5 && h[4] == "role";
  if (h.size() < 4 || h.size() > 5 || h[0] != "length_m" || h[1] != "z0_real" ||
      h[2] != "z0_imag" || h[3] != "gamma_model" || (h.size() == 5 && !has_role)) {
    throw ParseError(0, "chain header must be 'length_m,z0_real,z0_imag,gamma_model[,role]'");
  }
  for (const auto& key : doc.preamble.keys()) {
    if (key != "zs_real" && key != "zs_imag" && key != "zl_real" && key != "zl_imag") {
      throw ParseError(0, "unknown chain key '" + key + "'");
    }
  }
  ChainSpec chain;
  chain.source_impedance = {doc.preamble.get_double("zs_real", 0.0),
                            doc.preamble.get_double("zs_imag", 0.0)};
  chain.load_impedance = {doc.preamble.get_double("zl_real", 50.0),
                          doc.preamble.get_double("zl_imag", 0.0)};
  if (chain.load_impedance == Complex{}) throw ParseError(0, "load impedance must be non-zero");

  for (const auto& [line_no, row] : doc.rows) {
    const auto fields = text::split(row);
    if (fields.size() != h.size()) {
      throw ParseError(line_no, "expected " + std::to_string(h.size()) + " fields");
    }
    ChainSection s;
    s.length_m = text::parse_double(text::trim(fields[0]), line_no, "length_m");
    if (!(s.length_m >= 0.0) || !std::isfinite(s.length_m)) {
      throw ParseError(line_no, "length must be finite and non-negative");
    }
    s.z0 = {text::parse_double(text::trim(fields[1]), line_no, "z0_real"),
            text::parse_double(text::trim(fields[2]), line_no, "z0_imag")};
    if (s.z0 == Complex{}) throw ParseError(line_no, "characteristic impedance must be non-zero");
    s.gamma_model = std::string(text::trim(fields[3]));
    s.gamma = parse_gamma_model(s.gamma_model, line_no);
    if (has_role) {
      const auto role = text::trim(fields[4]);
      if (role == "series") {
        s.role = SectionRole::series;
      } else if (role == "tap_open") {
        s.role = SectionRole::tap_open;
      } else if (role == "tap_short") {
        s.role = SectionRole::tap_short;
      } else {
        throw ParseError(line_no, "unknown section role '" + std::string(role) + "'");
      }
    }
    chain.sections.push_back(std::move(s));
  }
  if (chain.sections.empty()) throw ParseError(0, "chain file lists no sections");
  return chain;
}

std::vector<TwoPortNetwork> build_link(const ChainSpec& chain, std::span<const double> freqs_hz) {
  std::vector<TwoPortNetwork> link;
  for (const auto& s : chain.sections) {
    auto section = line_section(s.length_m, s.z0, s.gamma, freqs_hz);
    if (s.role == SectionRole::series) {
      link.push_back(std::move(section));
      continue;
    }
    Companion tap;
    tap.sections.push_back(std::move(section));
    if (s.role == SectionRole::tap_short) tap.termination = Complex{};
    const auto at = link.size();
    link = attach_companion(std::move(link), at, tap);
  }
  return link;
}

Eigen::VectorXcd chain_response(const ChainSpec& chain, std::span<const double> freqs_hz) {
  auto link = build_link(chain, freqs_hz);
  if (link.empty()) {
    link.push_back(TwoPortNetwork::identity({freqs_hz.begin(), freqs_hz.end()}));
  }
  return endtoend_gain(link, chain.source_impedance, chain.load_impedance);
}

std::vector<double> linear_grid(double fmin_hz, double fmax_hz, std::size_t n) {
  if (n == 0) throw ModelError("frequency grid needs at least one point");
  if (!std::isfinite(fmin_hz) || !std::isfinite(fmax_hz) || fmin_hz < 0.0 || fmax_hz < fmin_hz) {
    throw ModelError("frequency grid needs 0 <= fmin <= fmax");
  }
  std::vector<double> f(n, fmin_hz);
  if (n == 1) return f;
  const double step = (fmax_hz - fmin_hz) / static_cast<double>(n - 1);
  for (std::size_t k = 1; k + 1 < n; ++k) f[k] = fmin_hz + step * static_cast<double>(k);
  f.back() = fmax_hz;
  return f;
}

void write_transfer_function(std::ostream& os, std::span<const double> freqs_hz,
                             const Eigen::VectorXcd& h) {
  if (static_cast<std::size_t>(h.size()) != freqs_hz.size()) {
    throw DimensionError("response length does not match frequency grid");
  }
  os << "frequency_hz,magnitude,phase_rad\n";
  for (std::size_t k = 0; k < freqs_hz.size(); ++k) {
    const Complex v = h(static_cast<Eigen::Index>(k));
    os << text::format_double(freqs_hz[k]) << ',' << text::format_double(std::abs(v)) << ','
       << text::format_double(std::arg(v)) << '\n';
  }
}

void write_impulse_response(std::ostream& os, const ImpulseResponse& h) {
  os << "time_s,amplitude\n";
  for (std::size_t k = 0; k < h.samples.size(); ++k) {
    os << text::format_double(h.time(k)) << ',' << text::format_double(h.samples[k]) << '\n';
  }
}

}  // namespace plcgrid
