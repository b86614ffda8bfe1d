#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mrta/datagen.hpp"
#include "mrta/model.hpp"

namespace mrta {

/// Reads either the extended warehouse format (PICKING/STATIONS/ROBOTS
/// headers) or a classic single-depot CVRP file (CAPACITY keyword), which
/// maps to an XMT instance. The result is validated; any problem raises
/// ParseError, positional where possible.
Instance parse_instance(std::string_view text);

/// Canonical extended-format text: entities ordered by id, single spaces,
/// LF line endings. parse_instance(write_instance(x)) == x.
std::string write_instance(const Instance& inst);

/// JSON record {"format": "mrta-solution", "version": 1, ...} with routes as
/// step lists such as ["P3", "D1"].
std::string write_solution(const Solution& sol);
Solution parse_solution(std::string_view text);

/// CSV with header `model_name,capacity,speed`; '#' starts a comment line.
std::vector<RobotCatalogEntry> parse_catalog(std::string_view text);

/// Shortest decimal text that reads back as the same double.
std::string format_double(double value);

/// Whole file, or standard input for "-".
std::string read_text(const std::filesystem::path& path);
/// Writes to the file, or standard output for "-".
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace mrta
