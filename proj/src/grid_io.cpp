#include "lab/grid_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace lab {

namespace {

const char* kHeader = "param1,param2,re,im,abs_err";

void check_token(const std::string& s) {
    if (s.find(',') != std::string::npos || s.find('\n') != std::string::npos ||
        s.find('"') != std::string::npos)
        throw std::invalid_argument("grid io: meta fields must not contain "
                                    "commas, quotes or newlines");
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

} // namespace

std::string format_shortest(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    if (res.ec != std::errc())
        throw std::runtime_error("grid io: float formatting failed");
    return std::string(buf, res.ptr);
}

double parse_double_exact(const std::string& s) {
    double out = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::invalid_argument("grid io: cannot parse float field '" + s +
                                    "'");
    return out;
}

std::string grid_to_csv(const KernelGrid& g) {
    std::string out = kHeader;
    for (const auto& name : g.meta_names) {
        check_token(name);
        out += ',';
        out += name;
    }
    out += '\n';
    for (const auto& cell : g.cells) {
        if (cell.meta.size() != g.meta_names.size())
            throw std::invalid_argument("grid io: cell meta width differs from "
                                        "the declared meta columns");
        out += format_shortest(cell.param1);
        out += ',';
        out += format_shortest(cell.param2);
        out += ',';
        out += format_shortest(cell.value.real());
        out += ',';
        out += format_shortest(cell.value.imag());
        out += ',';
        out += format_shortest(cell.abs_err);
        for (const auto& m : cell.meta) {
            check_token(m);
            out += ',';
            out += m;
        }
        out += '\n';
    }
    return out;
}

std::string grid_to_json(const KernelGrid& g) {
    std::ostringstream out;
    out << "{\"columns\":[\"param1\",\"param2\",\"re\",\"im\",\"abs_err\"";
    for (const auto& name : g.meta_names) {
        check_token(name);
        out << ",\"" << name << "\"";
    }
    out << "],\"rows\":[";
    bool first = true;
    for (const auto& cell : g.cells) {
        if (cell.meta.size() != g.meta_names.size())
            throw std::invalid_argument("grid io: cell meta width differs from "
                                        "the declared meta columns");
        if (!first)
            out << ",";
        first = false;
        out << "[" << format_shortest(cell.param1) << ","
            << format_shortest(cell.param2) << ","
            << format_shortest(cell.value.real()) << ","
            << format_shortest(cell.value.imag()) << ","
            << format_shortest(cell.abs_err);
        for (const auto& m : cell.meta) {
            check_token(m);
            out << ",\"" << m << "\"";
        }
        out << "]";
    }
    out << "]}";
    return out.str();
}

KernelGrid grid_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("grid io: empty input");
    auto header = split_line(line);
    if (header.size() < 5 || header[0] != "param1" || header[1] != "param2" ||
        header[2] != "re" || header[3] != "im" || header[4] != "abs_err")
        throw std::invalid_argument("grid io: unexpected header '" + line + "'");
    KernelGrid g;
    g.meta_names.assign(header.begin() + 5, header.end());
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        auto fields = split_line(line);
        if (fields.size() != header.size())
            throw std::invalid_argument("grid io: row width differs from header");
        GridCell cell;
        cell.param1 = parse_double_exact(fields[0]);
        cell.param2 = parse_double_exact(fields[1]);
        cell.value = cplx(parse_double_exact(fields[2]),
                          parse_double_exact(fields[3]));
        cell.abs_err = parse_double_exact(fields[4]);
        cell.meta.assign(fields.begin() + 5, fields.end());
        g.cells.push_back(std::move(cell));
    }
    return g;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("grid io: cannot open '" + tmp +
                                     "' for writing");
        out.write(content.data(),
                  static_cast<std::streamsize>(content.size()));
        if (!out)
            throw std::runtime_error("grid io: short write to '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("grid io: cannot rename '" + tmp + "' to '" +
                                 path + "'");
    }
}

void write_grid(const KernelGrid& g, const std::string& path,
                const std::string& format) {
    if (format == "csv")
        write_file_atomic(path, grid_to_csv(g));
    else if (format == "json")
        write_file_atomic(path, grid_to_json(g));
    else
        throw std::invalid_argument("grid io: format must be csv or json");
}

KernelGrid read_grid_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("grid io: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return grid_from_csv(buf.str());
}

} // namespace lab
