#ifndef LAB_GRID_IO_HPP
#define LAB_GRID_IO_HPP

#include "lab/constants.hpp"

#include <string>
#include <vector>

namespace lab {

struct GridCell {
    double param1 = 0.0;
    double param2 = 0.0;
    cplx value{0.0, 0.0};
    double abs_err = 0.0;
    std::vector<std::string> meta; // one entry per meta column
};

// Results of a rectangular parameter sweep, cells in row-major order.
// Serialized columns are exactly (param1, param2, re, im, abs_err, meta...).
struct KernelGrid {
    std::vector<std::string> meta_names; // names of the trailing meta columns
    std::vector<GridCell> cells;
};

// Shortest decimal representation that parses back to the same bits.
std::string format_shortest(double x);

// Full-precision parse; the whole string must be consumed.
double parse_double_exact(const std::string& s);

std::string grid_to_csv(const KernelGrid& g);
std::string grid_to_json(const KernelGrid& g);
KernelGrid grid_from_csv(const std::string& text);

// Writes content to a temporary file in the target directory and renames it
// into place, so readers never observe a partial file.
void write_file_atomic(const std::string& path, const std::string& content);

// format is "csv" or "json".
void write_grid(const KernelGrid& g, const std::string& path,
                const std::string& format);

KernelGrid read_grid_csv(const std::string& path);

} // namespace lab

#endif
