#pragma once

#include "hirota/pde_direct.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace hirota::io {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::size_t column(const std::string& name) const;
    std::vector<double> get(const std::string& name) const;
    std::vector<cplx> get_complex(const std::string& base) const;  // base_re, base_im
    bool has(const std::string& name) const;
};

void write_table(const std::filesystem::path& path, const Table& t, const std::string& comment = {});
Table read_table(const std::filesystem::path& path);

void add_complex(Table& t, const std::string& base, const std::vector<cplx>& v);
void add_real(Table& t, const std::string& name, const std::vector<double>& v);

void write_traces(const std::filesystem::path& path, const BoundaryTraces& tr);
BoundaryTraces read_traces(const std::filesystem::path& path);

// header line "# t=<value>", then x,u_re,u_im
void write_snapshot(const std::filesystem::path& path, const UniformGrid& x, const std::vector<cplx>& v, double t);
struct Snapshot {
    UniformGrid x;
    std::vector<cplx> values;
    double t = 0.0;
};
Snapshot read_snapshot(const std::filesystem::path& path);

std::string format_double(double v);

}  // namespace hirota::io
