#include "mcx/matrix.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace mcx {

int_matrix int_matrix::identity(std::size_t n) {
    int_matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

int_matrix int_matrix::from_rows(const std::vector<ivec>& rows) {
    if (rows.empty())
        throw std::invalid_argument("from_rows: no rows");
    std::size_t c = rows.front().size();
    int_matrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c)
            throw std::invalid_argument("from_rows: ragged rows");
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = rows[i][j];
    }
    return m;
}

ivec int_matrix::row(std::size_t i) const {
    return ivec(e_.begin() + i * cols_, e_.begin() + (i + 1) * cols_);
}

ivec int_matrix::col(std::size_t j) const {
    ivec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        v[i] = (*this)(i, j);
    return v;
}

int_matrix int_matrix::transposed() const {
    int_matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

ivec int_matrix::apply(const ivec& x) const {
    if (x.size() != cols_)
        throw std::invalid_argument("apply: length mismatch");
    ivec y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        bigint s = 0;
        for (std::size_t j = 0; j < cols_; ++j)
            s += (*this)(i, j) * x[j];
        y[i] = std::move(s);
    }
    return y;
}

bigint int_matrix::max_abs_entry() const {
    bigint m = 0;
    for (const auto& v : e_)
        if (abs(v) > m)
            m = abs(v);
    return m;
}

ivec vec_add(const ivec& a, const ivec& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("vec_add: length mismatch");
    ivec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

ivec vec_sub(const ivec& a, const ivec& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("vec_sub: length mismatch");
    ivec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

ivec vec_neg(ivec a) {
    for (auto& v : a)
        v = -v;
    return a;
}

bool vec_is_zero(const ivec& a) {
    for (const auto& v : a)
        if (v != 0)
            return false;
    return true;
}

bigint vec_norm1(const ivec& a) {
    bigint s = 0;
    for (const auto& v : a)
        s += abs(v);
    return s;
}

ivec vec_pos_part(const ivec& a) {
    ivec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0)
            r[i] = a[i];
    return r;
}

ivec vec_neg_part(const ivec& a) {
    ivec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] < 0)
            r[i] = -a[i];
    return r;
}

bool lex_less(const ivec& a, const ivec& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

ivec sign_normalized(ivec a) {
    for (const auto& v : a) {
        if (v == 0)
            continue;
        if (v < 0)
            return vec_neg(std::move(a));
        break;
    }
    return a;
}

namespace {

// strip comments, return whitespace-separated tokens
std::vector<std::string> data_tokens(std::istream& in) {
    std::vector<std::string> toks;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string t;
        while (ls >> t)
            toks.push_back(t);
    }
    return toks;
}

bigint parse_bigint(const std::string& t) {
    try {
        return bigint(t);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad integer token '" + t + "'");
    }
}

std::size_t parse_count(const std::string& t) {
    bigint v = parse_bigint(t);
    if (v < 0 || v > 1'000'000'000)
        throw std::invalid_argument("bad dimension '" + t + "'");
    return static_cast<std::size_t>(v);
}

} // namespace

int_matrix parse_matrix(std::istream& in) {
    auto toks = data_tokens(in);
    if (toks.size() < 2)
        throw std::invalid_argument("matrix text: missing 'm n' header");
    std::size_t m = parse_count(toks[0]);
    std::size_t n = parse_count(toks[1]);
    if (m < 1 || n < 1)
        throw std::invalid_argument("matrix text: dimensions must be >= 1");
    if (toks.size() != 2 + m * n)
        throw std::invalid_argument("matrix text: expected " + std::to_string(m * n) +
                                    " entries, got " + std::to_string(toks.size() - 2));
    int_matrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = parse_bigint(toks[2 + i * n + j]);
    return a;
}

int_matrix parse_matrix(const std::string& text) {
    std::istringstream in(text);
    return parse_matrix(in);
}

std::string format_matrix(const int_matrix& a) {
    std::ostringstream out;
    out << a.rows() << ' ' << a.cols() << '\n';
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j)
            out << (j ? " " : "") << a(i, j).str();
        out << '\n';
    }
    return out.str();
}

std::string matrix_digest(const int_matrix& a) {
    std::string text = format_matrix(a);
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

ivec parse_ivec_csv(const std::string& text) {
    ivec v;
    std::string cur;
    auto flush = [&] {
        // trim whitespace
        std::size_t b = cur.find_first_not_of(" \t");
        std::size_t e = cur.find_last_not_of(" \t");
        if (b == std::string::npos)
            throw std::invalid_argument("vector literal: empty entry");
        v.push_back(parse_bigint(cur.substr(b, e - b + 1)));
        cur.clear();
    };
    for (char c : text) {
        if (c == ',')
            flush();
        else
            cur += c;
    }
    flush();
    return v;
}

std::string format_ivec_csv(const ivec& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ',';
        s += v[i].str();
    }
    return s;
}

} // namespace mcx
