#include "rsom/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "rsom/errors.hpp"

namespace rsom {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <class T>
bool parse_number(std::string_view cell, T& out) {
    if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
    const char* end = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(cell.data(), end, out);
    return ec == std::errc() && ptr == end && !cell.empty();
}

}  // namespace

Dataset parse_csv(std::istream& in, LabelColumn labels, const std::string& source) {
    std::vector<double> values;
    std::vector<int> label_values;
    std::size_t width = 0;
    std::size_t line_no = 0;
    std::string line;
    std::vector<std::string_view> cells;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view body = trim(line);
        if (body.empty()) continue;

        cells.clear();
        std::size_t start = 0;
        while (true) {
            const auto comma = body.find(',', start);
            cells.push_back(trim(body.substr(start, comma == std::string_view::npos ? body.npos : comma - start)));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }

        if (width == 0) {
            width = cells.size();
            if (labels == LabelColumn::Last && width < 2)
                throw ParseError(source, line_no, "label column requested but row has a single cell");
        } else if (cells.size() != width) {
            throw ParseError(source, line_no,
                             "expected " + std::to_string(width) + " cells, found " + std::to_string(cells.size()));
        }

        const std::size_t features = labels == LabelColumn::Last ? width - 1 : width;
        for (std::size_t c = 0; c < features; ++c) {
            double v = 0.0;
            if (!parse_number(cells[c], v))
                throw ParseError(source, line_no, "cell " + std::to_string(c + 1) + " is not a number: '" +
                                                      std::string(cells[c]) + "'");
            if (!std::isfinite(v)) throw ParseError(source, line_no, "cell " + std::to_string(c + 1) + " is not finite");
            values.push_back(v);
        }
        if (labels == LabelColumn::Last) {
            int label = 0;
            if (!parse_number(cells.back(), label))
                throw ParseError(source, line_no, "label is not an integer: '" + std::string(cells.back()) + "'");
            label_values.push_back(label);
        }
    }
    if (width == 0) throw ParseError(source, line_no, "no data rows");
    const std::size_t dim = labels == LabelColumn::Last ? width - 1 : width;
    return Dataset(dim, std::move(values), std::move(label_values));
}

Dataset load_csv(const std::string& path, LabelColumn labels) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return parse_csv(in, labels, path);
}

std::vector<int> load_labels(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::vector<int> labels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view body = trim(line);
        if (body.empty()) continue;
        const auto comma = body.rfind(',');
        const std::string_view cell = trim(comma == std::string_view::npos ? body : body.substr(comma + 1));
        int label = 0;
        if (!parse_number(cell, label))
            throw ParseError(path, line_no, "label is not an integer: '" + std::string(cell) + "'");
        labels.push_back(label);
    }
    return labels;
}

std::string format_double(double value) {
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

void write_csv(std::ostream& out, const Dataset& data) {
    for (std::size_t i = 0; i < data.size(); ++i) {
        auto x = data.row(i);
        for (std::size_t d = 0; d < x.size(); ++d) {
            if (d) out << ',';
            out << format_double(x[d]);
        }
        if (data.has_labels()) out << ',' << data.labels()[i];
        out << '\n';
    }
}

void save_csv(const std::string& path, const Dataset& data) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_csv(out, data);
    if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace rsom
