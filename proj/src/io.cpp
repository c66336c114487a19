#include "hirota/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace hirota::io {

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::size_t Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw Error(ErrorCode::Io, "missing column '" + name + "'");
}

bool Table::has(const std::string& name) const {
    for (const auto& h : header)
        if (h == name) return true;
    return false;
}

std::vector<double> Table::get(const std::string& name) const {
    const std::size_t c = column(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.at(c));
    return out;
}

std::vector<cplx> Table::get_complex(const std::string& base) const {
    const auto re = get(base + "_re"), im = get(base + "_im");
    std::vector<cplx> out(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) out[i] = {re[i], im[i]};
    return out;
}

void add_real(Table& t, const std::string& name, const std::vector<double>& v) {
    if (t.rows.empty()) t.rows.resize(v.size());
    if (t.rows.size() != v.size()) throw Error(ErrorCode::Io, "column length mismatch for '" + name + "'");
    t.header.push_back(name);
    for (std::size_t i = 0; i < v.size(); ++i) t.rows[i].push_back(v[i]);
}

void add_complex(Table& t, const std::string& base, const std::vector<cplx>& v) {
    std::vector<double> re(v.size()), im(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        re[i] = v[i].real();
        im[i] = v[i].imag();
    }
    add_real(t, base + "_re", re);
    add_real(t, base + "_im", im);
}

void write_table(const std::filesystem::path& path, const Table& t, const std::string& comment) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream os(path);
    if (!os) throw Error(ErrorCode::Io, "cannot write " + path.string());
    if (!comment.empty()) os << "# " << comment << '\n';
    for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
    os << '\n';
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << format_double(r[i]);
        os << '\n';
    }
}

Table read_table(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw Error(ErrorCode::Io, "cannot read " + path.string());
    Table t;
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string cell;
        if (!have_header) {
            while (std::getline(ss, cell, ',')) t.header.push_back(cell);
            have_header = true;
            continue;
        }
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() != t.header.size()) throw Error(ErrorCode::Io, "ragged row in " + path.string());
        t.rows.push_back(std::move(row));
    }
    return t;
}

void write_traces(const std::filesystem::path& path, const BoundaryTraces& tr) {
    Table t;
    std::vector<double> ts(tr.t_grid.n);
    for (std::size_t i = 0; i < ts.size(); ++i) ts[i] = tr.t_grid.at(i);
    add_real(t, "t", ts);
    add_complex(t, "g0", tr.g0);
    add_complex(t, "g1", tr.g1);
    add_complex(t, "g2", tr.g2);
    write_table(path, t);
}

BoundaryTraces read_traces(const std::filesystem::path& path) {
    const Table t = read_table(path);
    const auto ts = t.get("t");
    if (ts.size() < 4) throw Error(ErrorCode::TraceGridMismatch, "too few trace samples");
    BoundaryTraces tr;
    const double h = (ts.back() - ts.front()) / static_cast<double>(ts.size() - 1);
    for (std::size_t i = 0; i < ts.size(); ++i)
        if (std::abs(ts[i] - (ts.front() + h * static_cast<double>(i))) > 1e-9 * (1.0 + std::abs(ts[i])))
            throw Error(ErrorCode::TraceGridMismatch, "trace times are not uniform");
    tr.t_grid = {ts.front(), h, ts.size()};
    tr.g0 = t.get_complex("g0");
    tr.g1 = t.get_complex("g1");
    tr.g2 = t.get_complex("g2");
    return tr;
}

void write_snapshot(const std::filesystem::path& path, const UniformGrid& x, const std::vector<cplx>& v, double t) {
    Table tab;
    std::vector<double> xs(x.n);
    for (std::size_t i = 0; i < x.n; ++i) xs[i] = x.at(i);
    add_real(tab, "x", xs);
    add_complex(tab, "u", v);
    write_table(path, tab, "t=" + format_double(t));
}

Snapshot read_snapshot(const std::filesystem::path& path) {
    std::ifstream is(path);
    std::string first;
    if (!is || !std::getline(is, first) || first.rfind("# t=", 0) != 0)
        throw Error(ErrorCode::Io, "snapshot header missing in " + path.string());
    Snapshot s;
    s.t = std::stod(first.substr(4));
    const Table tab = read_table(path);
    const auto xs = tab.get("x");
    if (xs.size() < 4) throw Error(ErrorCode::Io, "snapshot too short");
    s.x = {xs.front(), (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1), xs.size()};
    s.values = tab.get_complex("u");
    return s;
}

}  // namespace hirota::io
