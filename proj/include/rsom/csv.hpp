#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rsom/dataset.hpp"

namespace rsom {

enum class LabelColumn { None, Last };

// Comma-separated reals, one instance per line. Blank lines are skipped.
// Throws ParseError naming the offending line.
Dataset parse_csv(std::istream& in, LabelColumn labels = LabelColumn::None, const std::string& source = "<input>");
Dataset load_csv(const std::string& path, LabelColumn labels = LabelColumn::None);

// Integer labels from the last cell of each row (a bare label column works
// too, as does a dataset CSV with labels appended).
std::vector<int> load_labels(const std::string& path);

// Shortest round-trip formatting; labels, when present, go in the last column.
void write_csv(std::ostream& out, const Dataset& data);
void save_csv(const std::string& path, const Dataset& data);

// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

}  // namespace rsom
