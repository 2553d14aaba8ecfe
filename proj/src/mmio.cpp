#include "quadphi/mmio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "quadphi/csv.hpp"

namespace quadphi::mm {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return char(std::tolower(c)); });
    return s;
}

[[noreturn]] void fail(const std::string& what, const std::string& reason) {
    throw std::runtime_error(what + ": " + reason);
}

double parse_double(const std::string& tok, const std::string& what) {
    double v = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last) {
        fail(what, "malformed numeric value '" + tok + "'");
    }
    if (!std::isfinite(v)) {
        fail(what, "non-finite value '" + tok + "'");
    }
    return v;
}

long parse_index(const std::string& tok, long limit, const std::string& what) {
    long v = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size() || v < 1 || v > limit) {
        fail(what, "bad index '" + tok + "'");
    }
    return v;
}

bool next_data_line(std::istream& in, std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t pos = line.find_first_not_of(" \t");
        if (pos == std::string::npos || line[pos] == '%') continue;
        tokens.clear();
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
        return true;
    }
    return false;
}

} // namespace

DenseMatrix read_matrix_stream(std::istream& in, const std::string& what) {
    std::string banner;
    if (!std::getline(in, banner)) fail(what, "empty file");
    if (!banner.empty() && banner.back() == '\r') banner.pop_back();

    std::istringstream hs(banner);
    std::string tag, object, layout, field, symmetry;
    hs >> tag >> object >> layout >> field >> symmetry;
    if (lower(tag) != "%%matrixmarket" || lower(object) != "matrix") {
        fail(what, "missing MatrixMarket banner");
    }
    layout = lower(layout);
    field = lower(field);
    symmetry = lower(symmetry);
    if (layout != "array" && layout != "coordinate") {
        fail(what, "unsupported layout '" + layout + "'");
    }
    if (field != "real") {
        fail(what, "unsupported field '" + field + "' (only real)");
    }
    if (symmetry != "general" && symmetry != "symmetric") {
        fail(what, "unsupported symmetry '" + symmetry + "'");
    }

    std::vector<std::string> tokens;
    if (!next_data_line(in, tokens)) fail(what, "missing size line");

    const bool coordinate = layout == "coordinate";
    if (tokens.size() != (coordinate ? 3u : 2u)) fail(what, "malformed size line");
    const long rows = parse_index(tokens[0], 1 << 20, what);
    const long cols = parse_index(tokens[1], 1 << 20, what);
    if (rows != cols) fail(what, "matrix is not square");
    const int n = int(rows);
    DenseMatrix m(n);

    if (coordinate) {
        long nnz = 0;
        {
            const auto res =
                std::from_chars(tokens[2].data(), tokens[2].data() + tokens[2].size(), nnz);
            if (res.ec != std::errc{} || nnz < 0) fail(what, "malformed entry count");
        }
        for (long e = 0; e < nnz; ++e) {
            if (!next_data_line(in, tokens) || tokens.size() != 3) {
                fail(what, "truncated coordinate data");
            }
            const long i = parse_index(tokens[0], rows, what);
            const long j = parse_index(tokens[1], cols, what);
            const double v = parse_double(tokens[2], what);
            m(int(i - 1), int(j - 1)) = v;
            if (symmetry == "symmetric" && i != j) {
                m(int(j - 1), int(i - 1)) = v;
            }
        }
    } else {
        // array layout stores column-major; symmetric variants store the
        // lower triangle only
        const bool symmetric = symmetry == "symmetric";
        for (int j = 0; j < n; ++j) {
            for (int i = symmetric ? j : 0; i < n; ++i) {
                if (!next_data_line(in, tokens) || tokens.size() != 1) {
                    fail(what, "truncated array data");
                }
                const double v = parse_double(tokens[0], what);
                m(i, j) = v;
                if (symmetric && i != j) m(j, i) = v;
            }
        }
    }
    return m;
}

DenseMatrix read_matrix(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open matrix file '" + path + "'");
    }
    return read_matrix_stream(in, "'" + path + "'");
}

std::string matrix_to_string(const DenseMatrix& m) {
    std::ostringstream out;
    const int n = m.dim();
    out << "%%MatrixMarket matrix array real general\n";
    out << n << ' ' << n << '\n';
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            out << csvio::fmt_double(m(i, j)) << '\n';
        }
    }
    return out.str();
}

void write_matrix(const std::string& path, const DenseMatrix& m) {
    csvio::atomic_write_text(path, matrix_to_string(m));
}

} // namespace quadphi::mm
