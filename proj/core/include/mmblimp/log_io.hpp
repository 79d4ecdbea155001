#pragma once

#include <string>
#include <vector>

#include "mmblimp/log.hpp"

namespace mmb::harness {

enum class LogFormat { Csv, Struct };

// 25 data columns followed by the flag columns.
const std::vector<std::string>& csv_columns();
inline constexpr std::size_t kCsvDataColumns = 25;

std::string to_csv(const TrajectoryLog& log);
std::string to_struct(const TrajectoryLog& log);

TrajectoryLog from_csv(const std::string& text);
TrajectoryLog from_struct(const std::string& text);

// Throws IoError when the file cannot be written or read.
void export_log(const TrajectoryLog& log, LogFormat format, const std::string& path);
TrajectoryLog import_log(const std::string& path);  // format detected from content

}  // namespace mmb::harness
