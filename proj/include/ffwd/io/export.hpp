#pragma once

// Deterministic text export. Column order is fixed and every double is
// written with 17 significant digits, so identical runs give identical bytes.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ffwd/drive.hpp"
#include "ffwd/tdse.hpp"
#include "ffwd/transport.hpp"

namespace ffwd::io {

/// 17 significant digits (trailing zeros dropped), independent of the
/// process locale. Used for all exported data.
std::string format_double(double v);
/// Shortest string that parses back to `v`. Used for labels and messages.
std::string format_shortest(double v);

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void row(const std::vector<double>& values);
  const std::string& str() const { return text_; }

 private:
  std::size_t columns_;
  std::string text_;
};

/// t,R,T_ff,R_ff,delta_u,T_ad
std::string transport_csv(const TransportTrace& tr);
/// t,j_ad_x1,j_nad_x1,j_ad_x2,j_nad_x2
std::string currents_csv(const TransportTrace& tr);
/// t,x,a_ff,v_ff,e_ff over nodes with x_lo <= x <= x_hi, every `stride`-th
/// node, delta supports skipped.
std::string fields_csv(const DriveFieldSet& set, double x_lo, double x_hi, int stride);
/// t,F,residual (residual column empty when not computed)
std::string fidelity_csv(const FidelityTrace& tr);

std::string sha256_hex(std::string_view bytes);

struct WrittenFile {
  std::string name;
  std::string sha256;
  std::uintmax_t bytes = 0;
};

/// Writes through a temporary file and renames into place. Throws IOError.
WrittenFile write_file(const std::filesystem::path& dir, const std::string& name, std::string_view content);

}  // namespace ffwd::io
