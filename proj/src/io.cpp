// SPDX-License-Identifier: Apache-2.0
#include "bmx/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "bmx/errors.hpp"

namespace bmx::io {

namespace {

constexpr std::string_view kMagic = "BMX1";

void put_u32(std::ostream& os, std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = char((v >> (8 * i)) & 0xff);
    os.write(b, 4);
}

void put_u64(std::ostream& os, std::uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = char((v >> (8 * i)) & 0xff);
    os.write(b, 8);
}

std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    if (!is.read(reinterpret_cast<char*>(b), 4)) throw FormatError("truncated payload");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(b[i]) << (8 * i);
    return v;
}

std::uint64_t get_u64(std::istream& is) {
    unsigned char b[8];
    if (!is.read(reinterpret_cast<char*>(b), 8)) throw FormatError("truncated payload");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(b[i]) << (8 * i);
    return v;
}

void put_bits(std::ostream& os, std::span<const std::uint64_t> values) {
    std::uint8_t byte = 0;
    int filled = 0;
    for (std::uint64_t v : values) {
        if (v > 1) throw std::invalid_argument("bit packing requires 0/1 values");
        byte |= std::uint8_t(v) << filled;
        if (++filled == 8) {
            os.put(char(byte));
            byte = 0;
            filled = 0;
        }
    }
    if (filled > 0) os.put(char(byte));
}

void get_bits(std::istream& is, std::span<std::uint64_t> values) {
    std::uint8_t byte = 0;
    int avail = 0;
    for (std::uint64_t& v : values) {
        if (avail == 0) {
            int c = is.get();
            if (c == EOF) throw FormatError("truncated payload");
            byte = std::uint8_t(c);
            avail = 8;
        }
        v = byte & 1;
        byte >>= 1;
        --avail;
    }
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw FormatError("cannot open '" + path.string() + "' for writing");
    return os;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw FormatError("cannot open '" + path.string() + "' for reading");
    return is;
}

struct Header {
    std::string type;
    std::map<std::string, std::string> fields;

    const std::string& need(const std::string& key) const {
        auto it = fields.find(key);
        if (it == fields.end()) throw FormatError("header missing key '" + key + "'");
        return it->second;
    }
    std::uint64_t need_u64(const std::string& key) const {
        try {
            return std::stoull(need(key));
        } catch (const std::logic_error&) {
            throw FormatError("header key '" + key + "' is not a number");
        }
    }
};

void write_header(std::ostream& os, const std::string& type,
                  const std::vector<std::pair<std::string, std::string>>& fields) {
    os << kMagic << ' ' << type;
    for (const auto& [k, v] : fields) os << ' ' << k << '=' << v;
    os << '\n';
}

Header read_header(std::istream& is, const std::string& expected_type) {
    std::string line;
    if (!std::getline(is, line)) throw FormatError("missing header line");
    std::istringstream ls(line);
    std::string magic;
    Header h;
    if (!(ls >> magic >> h.type) || magic != kMagic)
        throw FormatError("bad magic; not a BMX1 file");
    std::string token;
    while (ls >> token) {
        auto eq = token.find('=');
        if (eq == std::string::npos) throw FormatError("malformed header token '" + token + "'");
        h.fields[token.substr(0, eq)] = token.substr(eq + 1);
    }
    if (h.type != expected_type)
        throw FormatError("expected a '" + expected_type + "' file, found '" + h.type + "'");
    return h;
}

Rational parse_rational_field(const Header& h, const std::string& key) {
    try {
        return Rational::parse(h.need(key));
    } catch (const std::invalid_argument&) {
        throw FormatError("header key '" + key + "' is not a rational");
    }
}

Field parse_field_field(const Header& h) {
    try {
        return Field::parse(h.need("field"));
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
}

void expect_eof(std::istream& is, const std::filesystem::path& path) {
    if (is.peek() != EOF) throw FormatError("trailing bytes in '" + path.string() + "'");
}

}  // namespace

void write_expander(const std::filesystem::path& path, const LayeredExpander& g) {
    const auto& table = g.table();  // requires a materialized graph
    const auto& p = g.params();
    auto os = open_out(path);
    write_header(os, "expander",
                 {{"n", std::to_string(p.left_count)},
                  {"d", std::to_string(p.seed_count)},
                  {"m", std::to_string(p.layer_size)},
                  {"k", std::to_string(p.sparsity)},
                  {"eps", p.expansion_error.str()},
                  {"seed", std::to_string(g.sample_seed())}});
    for (std::uint32_t v : table) put_u32(os, v);
    if (!os) throw FormatError("write failed for '" + path.string() + "'");
}

LayeredExpander read_expander(const std::filesystem::path& path) {
    auto is = open_in(path);
    Header h = read_header(is, "expander");
    ExpanderParams p;
    p.left_count = h.need_u64("n");
    p.seed_count = std::uint32_t(h.need_u64("d"));
    p.layer_size = std::uint32_t(h.need_u64("m"));
    p.sparsity = h.need_u64("k");
    p.expansion_error = parse_rational_field(h, "eps");
    std::uint64_t seed = h.need_u64("seed");
    std::vector<std::uint32_t> table(p.left_count * p.seed_count);
    for (auto& v : table) v = get_u32(is);
    expect_eof(is, path);
    try {
        return LayeredExpander::from_table(p, std::move(table), seed);
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
}

void write_sparse_vector(const std::filesystem::path& path, const SparseVector& v,
                         std::uint64_t length) {
    if (!v.entries().empty() && v.entries().back().index >= length)
        throw std::invalid_argument("write_sparse_vector: index out of range");
    auto os = open_out(path);
    write_header(os, "vector",
                 {{"field", v.field().tag()}, {"n", std::to_string(length)}, {"enc", "sparse"}});
    put_u64(os, v.weight());
    const bool gf2 = v.field().is_gf2();
    for (const auto& e : v.entries()) {
        put_u64(os, e.index);
        if (gf2)
            os.put(char(e.value));
        else
            put_u64(os, e.value);
    }
    if (!os) throw FormatError("write failed for '" + path.string() + "'");
}

SparseVector read_sparse_vector(const std::filesystem::path& path, std::uint64_t* length_out) {
    auto is = open_in(path);
    Header h = read_header(is, "vector");
    if (h.need("enc") != "sparse") throw FormatError("expected a sparse-encoded vector");
    Field field = parse_field_field(h);
    std::uint64_t n = h.need_u64("n");
    std::uint64_t count = get_u64(is);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    pairs.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t index = get_u64(is);
        std::uint64_t value;
        if (field.is_gf2()) {
            int c = is.get();
            if (c == EOF) throw FormatError("truncated payload");
            value = std::uint64_t(c);
        } else {
            value = get_u64(is);
        }
        if (index >= n) throw FormatError("sparse entry index out of range");
        if (value == 0 || value >= field.modulus())
            throw FormatError("sparse entry value not canonical");
        pairs.emplace_back(index, value);
    }
    expect_eof(is, path);
    if (length_out) *length_out = n;
    try {
        return SparseVector::from_pairs(field, std::move(pairs));
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
}

void write_dense_vector(const std::filesystem::path& path, const Field& field,
                        std::span<const std::uint64_t> values) {
    auto os = open_out(path);
    write_header(os, "vector",
                 {{"field", field.tag()},
                  {"n", std::to_string(values.size())},
                  {"enc", "dense"}});
    if (field.is_gf2())
        put_bits(os, values);
    else
        for (std::uint64_t v : values) put_u64(os, v);
    if (!os) throw FormatError("write failed for '" + path.string() + "'");
}

std::pair<Field, std::vector<std::uint64_t>> read_dense_vector(
    const std::filesystem::path& path) {
    auto is = open_in(path);
    Header h = read_header(is, "vector");
    if (h.need("enc") != "dense") throw FormatError("expected a dense-encoded vector");
    Field field = parse_field_field(h);
    std::vector<std::uint64_t> values(h.need_u64("n"));
    if (field.is_gf2()) {
        get_bits(is, values);
    } else {
        for (auto& v : values) {
            v = get_u64(is);
            if (v >= field.modulus()) throw FormatError("dense entry value not canonical");
        }
    }
    expect_eof(is, path);
    return {field, std::move(values)};
}

std::pair<Field, std::vector<std::uint64_t>> read_vector_as_dense(
    const std::filesystem::path& path) {
    {
        auto is = open_in(path);
        Header h = read_header(is, "vector");
        if (h.need("enc") == "dense") return read_dense_vector(path);
    }
    std::uint64_t n = 0;
    SparseVector v = read_sparse_vector(path, &n);
    return {v.field(), v.to_dense(n)};
}

void write_syndrome(const std::filesystem::path& path, const Syndrome& syn) {
    auto os = open_out(path);
    write_header(os, "syndrome",
                 {{"field", syn.field().tag()},
                  {"n", std::to_string(syn.vector_length())},
                  {"d", std::to_string(syn.seed_count())},
                  {"m", std::to_string(syn.layer_size())},
                  {"lambda", std::to_string(syn.layout().bit_count)}});
    if (syn.field().is_gf2()) {
        put_bits(os, syn.plain());
        put_bits(os, syn.masked());
    } else {
        for (std::uint64_t v : syn.plain()) put_u64(os, v);
        for (std::uint64_t v : syn.masked()) put_u64(os, v);
    }
    if (!os) throw FormatError("write failed for '" + path.string() + "'");
}

Syndrome read_syndrome(const std::filesystem::path& path) {
    auto is = open_in(path);
    Header h = read_header(is, "syndrome");
    Field field = parse_field_field(h);
    std::uint64_t n = h.need_u64("n");
    std::uint32_t d = std::uint32_t(h.need_u64("d"));
    std::uint32_t m = std::uint32_t(h.need_u64("m"));
    BitLayout layout{std::uint32_t(h.need_u64("lambda"))};
    Syndrome syn(field, n, d, m, layout);
    std::vector<std::uint64_t> plain(std::uint64_t(d) * m);
    std::vector<std::uint64_t> masked(std::uint64_t(d) * m * layout.bit_count);
    if (field.is_gf2()) {
        get_bits(is, plain);
        get_bits(is, masked);
    } else {
        for (auto& v : plain) v = get_u64(is);
        for (auto& v : masked) v = get_u64(is);
    }
    expect_eof(is, path);
    for (std::uint32_t s = 0; s < d; ++s) {
        auto pb = syn.plain_block(s);
        auto mb = syn.masked_block(s);
        std::copy_n(plain.begin() + std::uint64_t(s) * m, m, pb.begin());
        std::copy_n(masked.begin() + std::uint64_t(s) * m * layout.bit_count,
                    std::uint64_t(m) * layout.bit_count, mb.begin());
    }
    return syn;
}

void write_disjunct(const std::filesystem::path& path, const DisjunctMatrix& m) {
    auto os = open_out(path);
    write_header(os, "disjunct",
                 {{"n", std::to_string(m.items())},
                  {"k", std::to_string(m.sparsity())},
                  {"t", std::to_string(m.tests())},
                  {"seed", std::to_string(m.seed())},
                  {"p", m.density().str()}});
    for (std::uint32_t q = 0; q < m.tests(); ++q) {
        const auto& row = m.row_support(q);
        put_u32(os, std::uint32_t(row.size()));
        for (std::uint32_t j : row) put_u32(os, j);
    }
    if (!os) throw FormatError("write failed for '" + path.string() + "'");
}

DisjunctMatrix read_disjunct(const std::filesystem::path& path) {
    auto is = open_in(path);
    Header h = read_header(is, "disjunct");
    std::uint64_t n = h.need_u64("n");
    std::uint64_t k = h.need_u64("k");
    std::uint32_t t = std::uint32_t(h.need_u64("t"));
    std::uint64_t seed = h.need_u64("seed");
    std::vector<std::vector<std::uint32_t>> cols(n);
    for (std::uint32_t q = 0; q < t; ++q) {
        std::uint32_t count = get_u32(is);
        for (std::uint32_t i = 0; i < count; ++i) {
            std::uint32_t j = get_u32(is);
            if (j >= n) throw FormatError("disjunct row entry out of range");
            cols[j].push_back(q);
        }
    }
    expect_eof(is, path);
    try {
        return DisjunctMatrix::from_columns(n, k, t, std::move(cols), seed);
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
}

void write_outcomes(const std::filesystem::path& path, const OutcomeVector& out) {
    auto os = open_out(path);
    write_header(os, "outcomes",
                 {{"n", std::to_string(out.items)},
                  {"t", std::to_string(out.tests)},
                  {"lambda", std::to_string(out.bit_count)}});
    std::vector<std::uint64_t> bits(out.pooled.begin(), out.pooled.end());
    put_bits(os, bits);
    bits.assign(out.masked.begin(), out.masked.end());
    put_bits(os, bits);
    if (!os) throw FormatError("write failed for '" + path.string() + "'");
}

OutcomeVector read_outcomes(const std::filesystem::path& path) {
    auto is = open_in(path);
    Header h = read_header(is, "outcomes");
    OutcomeVector out;
    out.items = h.need_u64("n");
    out.tests = std::uint32_t(h.need_u64("t"));
    out.bit_count = std::uint32_t(h.need_u64("lambda"));
    std::vector<std::uint64_t> bits(out.tests);
    get_bits(is, bits);
    out.pooled.assign(bits.begin(), bits.end());
    bits.assign(std::uint64_t(out.tests) * out.bit_count, 0);
    get_bits(is, bits);
    out.masked.assign(bits.begin(), bits.end());
    expect_eof(is, path);
    if (!out.internally_consistent())
        throw FormatError("outcome file violates the negative-pool invariant");
    return out;
}

}  // namespace bmx::io
