#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "augsimp/aug.hpp"
#include "augsimp/construct.hpp"
#include "augsimp/monoid.hpp"
#include "augsimp/rank2.hpp"
#include "json.hpp"

namespace augsimp {

struct parse_error : std::runtime_error {
  int line = 0;    // 1-based; 0 when unknown
  int column = 0;  // 1-based; 0 when unknown
  parse_error(const std::string& msg, int line_, int column_)
      : std::runtime_error(msg), line(line_), column(column_) {}
};

// Monoid text: first content line is the degree n, every further content
// line one generator as n space-separated points in 1..n. '#' starts a
// comment; blank lines are skipped.
struct MonoidFile {
  int n = 0;
  std::vector<Transformation> generators;
};

MonoidFile read_monoid_file(std::istream& in);

// System text: header "n <n> r <r>", then an "images:" section with one
// r-set per line, then a "partitions:" section with blocks joined by '|'.
struct SystemFile {
  ImageSystem images;
  std::vector<SetPartition> partitions;
};

SystemFile read_system_file(std::istream& in);
void write_system_file(std::ostream& out, const ImageSystem& images,
                       const std::vector<SetPartition>& partitions);

enum class FileKind { monoid, system };

// A file whose first content line starts with the token "n" is a system
// file; one starting with an integer is a monoid file.
FileKind detect_file_kind(const std::string& content);

// The structure matrix over {0, 1, g} in the same tab-separated layout
// (and with the same labels) as the signed matrix dump.
std::string sandwich_dump(const ReesData& d);

nlohmann::ordered_json report_json(const SimplicityReport& rep);
nlohmann::ordered_json rank2_json(const Rank2Result& res);
nlohmann::ordered_json error_json(const std::string& kind, const std::string& message,
                                  int line = 0, int column = 0);

}  // namespace augsimp
