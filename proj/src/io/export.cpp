#include "ffwd/io/export.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>

#include "ffwd/errors.hpp"

namespace ffwd::io {

std::string format_double(double v) {
  if (v == 0.0) return "0";  // folds -0
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  if (ec != std::errc()) throw IOError("format_double: conversion failed");
  return std::string(buf.data(), ptr);
}

std::string format_shortest(double v) {
  if (v == 0.0) return "0";
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw IOError("format_shortest: conversion failed");
  return std::string(buf.data(), ptr);
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) text_ += ',';
    text_ += header[i];
  }
  text_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_) throw IOError("CsvWriter: row width does not match header");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) text_ += ',';
    text_ += format_double(values[i]);
  }
  text_ += '\n';
}

std::string transport_csv(const TransportTrace& tr) {
  CsvWriter w({"t", "R", "T_ff", "R_ff", "delta_u", "T_ad"});
  for (std::size_t i = 0; i < tr.times.size(); ++i)
    w.row({tr.times[i], tr.R[i], tr.T_ff[i], tr.R_ff[i], tr.delta_u[i], tr.T_adiabatic[i]});
  return w.str();
}

std::string currents_csv(const TransportTrace& tr) {
  CsvWriter w({"t", "j_ad_x1", "j_nad_x1", "j_ad_x2", "j_nad_x2"});
  for (std::size_t i = 0; i < tr.times.size(); ++i)
    w.row({tr.times[i], tr.j_ad_x1[i], tr.j_nad_x1[i], tr.j_ad_x2[i], tr.j_nad_x2[i]});
  return w.str();
}

std::string fields_csv(const DriveFieldSet& set, double x_lo, double x_hi, int stride) {
  if (stride < 1) throw IOError("fields_csv: stride must be positive");
  const Grid& g = set.grid;
  const Index i0 = g.node(x_lo);
  const Index i1 = g.node(x_hi);
  CsvWriter w({"t", "x", "a_ff", "v_ff", "e_ff"});
  for (std::size_t it = 0; it < set.times.size(); ++it) {
    const auto r = static_cast<Index>(it);
    for (Index i = i0; i <= i1; i += stride) {
      if (g.is_break(i)) continue;
      w.row({set.times[it], g.x(i), set.a_ff(r, i), set.v_ff(r, i), set.e_ff(r, i)});
    }
  }
  return w.str();
}

std::string fidelity_csv(const FidelityTrace& tr) {
  std::string out = "t,F,residual\n";
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    out += format_double(tr.times[i]) + ',' + format_double(tr.fidelity[i]) + ',';
    if (i < tr.residual.size()) out += format_double(tr.residual[i]);
    out += '\n';
  }
  return out;
}

std::string sha256_hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), md.data(), &len) != 1)
    throw IOError("sha256: digest failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

WrittenFile write_file(const std::filesystem::path& dir, const std::string& name, std::string_view content) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IOError("cannot create output directory '" + dir.string() + "': " + ec.message());
  const fs::path target = dir / name;
  const fs::path tmp = dir / (name + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IOError("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IOError("write to '" + tmp.string() + "' failed");
  }
  fs::rename(tmp, target, ec);
  if (ec) throw IOError("cannot move '" + tmp.string() + "' into place: " + ec.message());
  return {name, sha256_hex(content), content.size()};
}

}  // namespace ffwd::io
