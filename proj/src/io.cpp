#include "bpp/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bpp {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << "\n";
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
        out << "\n";
    }
}

void write_field_snapshot(const FunctionField& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_field_snapshot: cannot open " + path);
    out << "bpp-field 1 " << f.dim() << " " << f.resolution() << "\n";
    for (int c = 0; c < f.dim(); ++c) out << (c ? " " : "") << format_double(f.box().lo[c]);
    for (int c = 0; c < f.dim(); ++c) out << " " << format_double(f.box().hi[c]);
    out << "\n";
    for (double v : f.samples()) out << format_double(v) << "\n";
}

FunctionField read_field_snapshot(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_field_snapshot: cannot open " + path);
    std::string magic;
    int version, dim, res;
    in >> magic >> version >> dim >> res;
    if (magic != "bpp-field" || version != 1)
        throw std::runtime_error("read_field_snapshot: bad header in " + path);
    Box b;
    for (int c = 0; c < dim; ++c) in >> b.lo[c];
    for (int c = 0; c < dim; ++c) in >> b.hi[c];
    std::size_t total = 1;
    for (int c = 0; c < dim; ++c) total *= res;
    std::vector<double> s(total);
    for (auto& v : s)
        if (!(in >> v)) throw std::runtime_error("read_field_snapshot: truncated " + path);
    return FunctionField(dim, b, res, std::move(s));
}

void write_body_csv(const StarBody& K, const std::string& path) {
    std::vector<std::string> header;
    header.push_back("dir_x");
    header.push_back("dir_y");
    if (K.dim() == 3) header.push_back("dir_z");
    header.push_back("radial");
    std::vector<std::vector<std::string>> rows;
    for (int i = 0; i < K.grid().size(); ++i) {
        std::vector<std::string> r;
        for (int c = 0; c < K.dim(); ++c) r.push_back(format_double(K.grid().dirs[i][c]));
        r.push_back(format_double(K.radial_at(i)));
        rows.push_back(std::move(r));
    }
    write_csv(path, header, rows);
}

bool make_directories(const std::string& path) {
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    return !ec;
}

}  // namespace bpp
