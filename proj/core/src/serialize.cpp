#include <czsi/serialize.hpp>

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace czsi {

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for write: " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

namespace {

void put_u64(std::string& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t get_u64(const char* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(p[i])) << (8 * i);
    return v;
}

std::uint64_t double_bits(double d) {
    std::uint64_t v;
    std::memcpy(&v, &d, 8);
    return v;
}

double bits_double(std::uint64_t v) {
    double d;
    std::memcpy(&d, &v, 8);
    return d;
}

}  // namespace

void write_field_binary(const std::string& path, const GridField& f) {
    if (!f.real_valued)
        throw std::invalid_argument("field binary format stores real-valued fields only");
    std::string buf;
    buf.reserve(24 + 8 * f.values.size());
    put_u64(buf, static_cast<std::uint64_t>(f.grid.dim));
    put_u64(buf, double_bits(f.grid.side_length));
    put_u64(buf, static_cast<std::uint64_t>(f.grid.resolution));
    for (const cplx& v : f.values) put_u64(buf, double_bits(v.real()));
    atomic_write(path, buf);
}

GridField read_field_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open field file: " + path);
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (buf.size() < 24) throw std::runtime_error("field file truncated: " + path);
    int dim = static_cast<int>(get_u64(buf.data()));
    double L = bits_double(get_u64(buf.data() + 8));
    long N = static_cast<long>(get_u64(buf.data() + 16));
    Grid g = Grid::make(dim, L, N);
    std::size_t n = static_cast<std::size_t>(g.point_count());
    if (buf.size() != 24 + 8 * n)
        throw std::runtime_error("field file payload size mismatch: " + path);
    GridField f;
    f.grid = g;
    f.real_valued = true;
    f.values.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        f.values[i] = cplx(bits_double(get_u64(buf.data() + 24 + 8 * i)), 0.0);
    return f;
}

void write_field_csv(const std::string& path, const GridField& f, int row_index) {
    std::ostringstream out;
    out.precision(17);
    const Grid& g = f.grid;
    if (g.dim == 1) {
        out << "x,value\n";
        for (long k = 0; k < g.resolution; ++k)
            out << g.coord(k) << "," << f.values[static_cast<std::size_t>(k)].real() << "\n";
    } else {
        if (row_index < 0 || row_index >= g.resolution)
            throw std::invalid_argument("row index out of range");
        out << "x1,value\n";
        for (long k = 0; k < g.resolution; ++k) {
            long idx = g.flatten(k, row_index);
            out << g.coord(k) << "," << f.values[static_cast<std::size_t>(idx)].real() << "\n";
        }
    }
    atomic_write(path, out.str());
}

std::string kernel_spec_text(const KernelSpec& spec) {
    std::ostringstream out;
    out << "czkernel v1\n";
    out << "dim " << spec.dim() << "\n";
    for (const KernelTerm& t : spec.terms()) {
        out << "term " << t.degree << " " << rat_str(t.c.re) << " " << rat_str(t.c.im);
        if (t.pi_pow != 0) out << " pi^" << t.pi_pow;
        out << "\n";
    }
    return out.str();
}

KernelSpec parse_kernel_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    bool saw_magic = false;
    int dim = 0;
    std::vector<KernelTerm> terms;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // strip comment and whitespace
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;  // blank
        auto fail = [&](const std::string& why) -> void {
            throw std::runtime_error("kernel file line " + std::to_string(lineno) + ": " + why);
        };
        if (!saw_magic) {
            std::string ver;
            if (word != "czkernel" || !(ls >> ver) || ver != "v1")
                fail("expected header 'czkernel v1'");
            saw_magic = true;
            continue;
        }
        if (word == "dim") {
            if (dim != 0) fail("duplicate dim line");
            if (!(ls >> dim) || (dim != 1 && dim != 2)) fail("dim must be 1 or 2");
        } else if (word == "term") {
            if (dim == 0) fail("term before dim");
            int degree;
            std::string re_s, im_s;
            if (!(ls >> degree >> re_s >> im_s)) fail("term needs <degree> <re> <im>");
            KernelTerm t;
            t.degree = degree;
            t.pi_pow = 0;
            std::string extra;
            if (ls >> extra) {
                if (extra.rfind("pi^", 0) == 0) {
                    try {
                        t.pi_pow = std::stoi(extra.substr(3));
                    } catch (const std::exception&) {
                        fail("bad pi power: " + extra);
                    }
                } else {
                    fail("unexpected token: " + extra);
                }
                std::string trail;
                if (ls >> trail) fail("unexpected token: " + trail);
            }
            try {
                t.c = GaussRat(rat_parse(re_s), rat_parse(im_s));
            } catch (const std::exception& e) {
                fail(e.what());
            }
            t.exact = true;
            terms.push_back(t);
        } else {
            fail("unknown directive: " + word);
        }
    }
    if (!saw_magic) throw std::runtime_error("kernel file: missing 'czkernel v1' header");
    if (dim == 0) throw std::runtime_error("kernel file: missing dim line");
    if (terms.empty()) throw std::runtime_error("kernel file: no terms");
    return KernelSpec(dim, std::move(terms));
}

void write_kernel_spec(const std::string& path, const KernelSpec& spec) {
    atomic_write(path, kernel_spec_text(spec));
}

KernelSpec read_kernel_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open kernel file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_kernel_text(text);
}

}  // namespace czsi
