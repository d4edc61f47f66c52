#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace esn {

/// 17 significant digits via std::to_chars: locale-independent and enough to
/// round-trip any double bit-exactly.
std::string fmt_double(double v);

/// Full-token parse via std::from_chars (correctly rounded, locale-free).
/// `what` names the value in error messages.
double parse_double(std::string_view token, const std::string& what);

std::uint64_t parse_u64(std::string_view token, const std::string& what);
std::size_t parse_size(std::string_view token, const std::string& what);

/// Write-temp-then-rename, so readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace esn
