#include "blowup/csv.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "blowup/jsonio.hpp"

namespace blowup {

namespace {

const char* kFixedColumns[] = {"E_k",    "E_m",       "E_i",     "E_total",    "G",
                               "F",      "Q",         "grad_u_sq", "curl_H_sq", "u_L6",
                               "rho_L65", "rho_Lgamma", "div_H_sq", "dissipation", "boundary_mass"};
constexpr int kFixedColumnCount = 15;

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

double parse_number(const std::string& tok, std::size_t line_no) {
    const char* begin = tok.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v)) {
        throw SchemaError("trajectory CSV: bad numeric field '" + tok + "' on line " +
                          std::to_string(line_no));
    }
    return v;
}

}  // namespace

std::string csv_header(int n_dim) {
    std::string h = "t,m";
    for (int d = 1; d <= n_dim; ++d) h += ",P" + std::to_string(d);
    for (const char* c : kFixedColumns) {
        h += ",";
        h += c;
    }
    return h;
}

std::string csv_row(const EnergyBreakdown& b) {
    std::string row = format_double(b.t) + "," + format_double(b.m);
    for (double p : b.P) row += "," + format_double(p);
    const double fixed[] = {b.E_k,    b.E_m,       b.E_i,     b.E_total,    b.G,
                            b.F,      b.Q,         b.grad_u_sq, b.curl_H_sq, b.u_L6,
                            b.rho_L65, b.rho_Lgamma, b.div_H_sq, b.dissipation, b.boundary_mass};
    for (double v : fixed) row += "," + format_double(v);
    return row;
}

std::string trajectory_to_csv(const std::vector<EnergyBreakdown>& samples, int n_dim) {
    std::string out = csv_header(n_dim) + "\n";
    for (const auto& b : samples) out += csv_row(b) + "\n";
    return out;
}

std::vector<EnergyBreakdown> parse_trajectory_csv(const std::string& content) {
    std::istringstream in(content);
    std::string line;
    if (!std::getline(in, line)) throw SchemaError("trajectory CSV: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const auto header = split(line, ',');
    if (header.size() < 3 || header[0] != "t" || header[1] != "m") {
        throw SchemaError("trajectory CSV: header must start with t,m,P1,...");
    }
    int n_dim = 0;
    std::size_t col = 2;
    while (col < header.size() && header[col] == "P" + std::to_string(n_dim + 1)) {
        ++n_dim;
        ++col;
    }
    if (n_dim == 0) throw SchemaError("trajectory CSV: missing momentum columns P1...");
    const std::string expected = csv_header(n_dim);
    if (line != expected) {
        throw SchemaError("trajectory CSV: header mismatch, expected '" + expected + "'");
    }
    const std::size_t n_cols = 2 + static_cast<std::size_t>(n_dim) + kFixedColumnCount;

    std::vector<EnergyBreakdown> samples;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto toks = split(line, ',');
        if (toks.size() != n_cols) {
            throw SchemaError("trajectory CSV: wrong column count on line " + std::to_string(line_no));
        }
        EnergyBreakdown b;
        std::size_t k = 0;
        b.t = parse_number(toks[k++], line_no);
        b.m = parse_number(toks[k++], line_no);
        b.P.resize(static_cast<std::size_t>(n_dim));
        for (int d = 0; d < n_dim; ++d) b.P[static_cast<std::size_t>(d)] = parse_number(toks[k++], line_no);
        b.E_k = parse_number(toks[k++], line_no);
        b.E_m = parse_number(toks[k++], line_no);
        b.E_i = parse_number(toks[k++], line_no);
        b.E_total = parse_number(toks[k++], line_no);
        b.G = parse_number(toks[k++], line_no);
        b.F = parse_number(toks[k++], line_no);
        b.Q = parse_number(toks[k++], line_no);
        b.grad_u_sq = parse_number(toks[k++], line_no);
        b.curl_H_sq = parse_number(toks[k++], line_no);
        b.u_L6 = parse_number(toks[k++], line_no);
        b.rho_L65 = parse_number(toks[k++], line_no);
        b.rho_Lgamma = parse_number(toks[k++], line_no);
        b.div_H_sq = parse_number(toks[k++], line_no);
        b.dissipation = parse_number(toks[k++], line_no);
        b.boundary_mass = parse_number(toks[k++], line_no);
        samples.push_back(std::move(b));
    }
    return samples;
}

std::vector<EnergyBreakdown> read_trajectory_csv(const std::string& path) {
    return parse_trajectory_csv(read_text_file(path));
}

}  // namespace blowup
