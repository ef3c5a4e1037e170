#include "scars/grid.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace scars {

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int resolve_workers(int threads, int n_rows) {
    int nw = threads;
    if (nw <= 0) nw = static_cast<int>(std::thread::hardware_concurrency());
    if (nw <= 0) nw = 1;
    if (nw > 16) nw = 16;
    return std::min(nw, n_rows);
}

// Fills cell centres with density(r, phi). Rows are independent, every cell is
// computed the same way regardless of the partition, so worker count cannot
// change a single byte of the result.
template <typename F>
DensityGrid fill_grid(int n_cells, double radius, int threads, F&& density) {
    if (n_cells < 32 || n_cells > 4096)
        throw std::domain_error("grid: n_cells outside [32, 4096]");
    if (!(radius > 0.0)) throw std::domain_error("grid: radius must be positive");
    DensityGrid g;
    g.n_cells = n_cells;
    g.radius = radius;
    g.values.assign(static_cast<std::size_t>(n_cells) * n_cells, 0.0);
    g.mask.assign(static_cast<std::size_t>(n_cells) * n_cells, 0);
    const double h = 2.0 * radius / n_cells;
    const int nw = resolve_workers(threads, n_cells);
    std::exception_ptr first_error;
    std::mutex err_mx;
    auto run_rows = [&](int w) {
        try {
            for (int iy = w; iy < n_cells; iy += nw) {
                const double y = -radius + (iy + 0.5) * h;
                for (int ix = 0; ix < n_cells; ++ix) {
                    const double x = -radius + (ix + 0.5) * h;
                    const double r = std::sqrt(x * x + y * y);
                    if (r > radius) continue;
                    const std::size_t idx = static_cast<std::size_t>(iy) * n_cells + ix;
                    g.mask[idx] = 1;
                    g.values[idx] = density(r, std::atan2(y, x));
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(err_mx);
            if (!first_error) first_error = std::current_exception();
        }
    };
    if (nw == 1) {
        run_rows(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nw);
        for (int w = 0; w < nw; ++w) pool.emplace_back(run_rows, w);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return g;
}

const char* kReservedKeys[] = {"format_version", "n_cells", "radius"};

bool is_reserved(const std::string& key) {
    for (const char* r : kReservedKeys)
        if (key == r) return true;
    return false;
}

void check_meta_token(const std::string& s, const char* what) {
    if (s.find_first_of(",=\n\r") != std::string::npos)
        throw std::invalid_argument(std::string("grid meta ") + what +
                                    " may not contain ',', '=' or line breaks: " + s);
}

}  // namespace

DensityGrid eval_grid(const ScarPacket& packet, int n_cells, int threads) {
    DensityGrid g = fill_grid(n_cells, packet.config.radius, threads,
                              [&](double r, double phi) { return packet_density(packet, r, phi); });
    g.meta["source"] = "packet";
    g.meta["p"] = std::to_string(packet.shell.p);
    g.meta["q"] = std::to_string(packet.shell.q);
    g.meta["l0"] = std::to_string(packet.shell.l0);
    g.meta["n0"] = std::to_string(packet.shell.n0);
    g.meta["members"] = std::to_string(packet.shell.members.size());
    g.meta["delta_phi"] = fmt17(packet.delta_phi);
    return g;
}

DensityGrid eval_grid_asymptotic(const Shell& shell, double delta_phi, double phi0,
                                 int n_cells, int threads) {
    const double radius = shell_radius(shell);
    DensityGrid g = fill_grid(n_cells, radius, threads, [&](double r, double phi) {
        return asymptotic_density(shell, delta_phi, r, phi, phi0);
    });
    g.meta["source"] = "asymptotic";
    g.meta["p"] = std::to_string(shell.p);
    g.meta["q"] = std::to_string(shell.q);
    g.meta["l0"] = std::to_string(shell.l0);
    g.meta["n0"] = std::to_string(shell.n0);
    g.meta["delta_phi"] = fmt17(delta_phi);
    g.meta["phi0"] = fmt17(phi0);
    return g;
}

void write_csv(const DensityGrid& grid, const std::string& path) {
    const int n = grid.n_cells;
    if (n <= 0 || grid.values.size() != static_cast<std::size_t>(n) * n ||
        grid.mask.size() != grid.values.size())
        throw std::invalid_argument("write_csv: malformed grid");
    std::ostringstream out;
    out << "format_version=1,n_cells=" << n << ",radius=" << fmt17(grid.radius);
    for (const auto& [key, value] : grid.meta) {
        check_meta_token(key, "key");
        check_meta_token(value, "value");
        if (key.empty() || is_reserved(key))
            throw std::invalid_argument("write_csv: reserved or empty meta key: " + key);
        out << ',' << key << '=' << value;
    }
    out << "\nix,iy,value\n";
    for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
            const std::size_t idx = static_cast<std::size_t>(iy) * n + ix;
            if (!grid.mask[idx]) continue;
            out << ix << ',' << iy << ',' << fmt17(grid.values[idx]) << '\n';
        }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("write_csv: cannot open " + path);
    f << out.str();
    f.flush();
    if (!f.good()) throw IoError("write_csv: write failed for " + path);
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

long parse_long(const std::string& tok, const char* what) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(tok, &used);
    } catch (const std::exception&) {
        throw IoError(std::string("read_csv: bad ") + what + " token: " + tok);
    }
    if (used != tok.size())
        throw IoError(std::string("read_csv: bad ") + what + " token: " + tok);
    return v;
}

double parse_value(const std::string& tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        throw IoError("read_csv: bad value token: " + tok);
    }
    if (used != tok.size()) throw IoError("read_csv: bad value token: " + tok);
    if (!std::isfinite(v)) throw IoError("read_csv: non-finite value token: " + tok);
    if (v < 0.0) throw IoError("read_csv: negative density value: " + tok);
    return v;
}

std::string chomp(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

}  // namespace

DensityGrid read_csv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("read_csv: cannot open " + path);
    std::string line;
    if (!std::getline(f, line)) throw IoError("read_csv: missing header in " + path);
    DensityGrid g;
    long n = -1;
    bool saw_version = false, saw_radius = false;
    for (const auto& pair : split(chomp(line), ',')) {
        const std::size_t eq = pair.find('=');
        if (eq == std::string::npos || eq == 0)
            throw IoError("read_csv: malformed header pair: " + pair);
        const std::string key = pair.substr(0, eq);
        const std::string value = pair.substr(eq + 1);
        if (key == "format_version") {
            if (value != "1") throw IoError("read_csv: unsupported format_version " + value);
            saw_version = true;
        } else if (key == "n_cells") {
            n = parse_long(value, "n_cells");
        } else if (key == "radius") {
            std::size_t used = 0;
            try {
                g.radius = std::stod(value, &used);
            } catch (const std::exception&) {
                throw IoError("read_csv: bad radius: " + value);
            }
            if (used != value.size() || !(g.radius > 0.0))
                throw IoError("read_csv: bad radius: " + value);
            saw_radius = true;
        } else {
            if (g.meta.count(key)) throw IoError("read_csv: duplicate meta key: " + key);
            g.meta[key] = value;
        }
    }
    if (!saw_version || !saw_radius || n < 32 || n > 4096)
        throw IoError("read_csv: header missing format_version/n_cells/radius in " + path);
    g.n_cells = static_cast<int>(n);
    g.values.assign(static_cast<std::size_t>(n) * n, 0.0);
    g.mask.assign(static_cast<std::size_t>(n) * n, 0);
    if (!std::getline(f, line) || chomp(line) != "ix,iy,value")
        throw IoError("read_csv: missing 'ix,iy,value' column row in " + path);
    while (std::getline(f, line)) {
        line = chomp(line);
        if (line.empty() && f.eof()) break;
        const auto toks = split(line, ',');
        if (toks.size() != 3) throw IoError("read_csv: malformed data row: " + line);
        const long ix = parse_long(toks[0], "ix");
        const long iy = parse_long(toks[1], "iy");
        if (ix < 0 || ix >= n || iy < 0 || iy >= n)
            throw IoError("read_csv: cell index out of range: " + line);
        const std::size_t idx = static_cast<std::size_t>(iy) * n + ix;
        if (g.mask[idx]) throw IoError("read_csv: duplicate cell: " + line);
        g.mask[idx] = 1;
        g.values[idx] = parse_value(toks[2]);
    }
    return g;
}

void render_pgm(const DensityGrid& grid, const std::string& path, int levels) {
    if (levels < 2 || levels > 64)
        throw std::domain_error("render_pgm: levels outside [2, 64]");
    const int n = grid.n_cells;
    if (n <= 0 || grid.values.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("render_pgm: malformed grid");
    double dmax = 0.0;
    for (std::size_t i = 0; i < grid.values.size(); ++i)
        if (grid.mask[i] && grid.values[i] > dmax) dmax = grid.values[i];
    std::string bytes;
    bytes.reserve(static_cast<std::size_t>(n) * n);
    for (int iy = n - 1; iy >= 0; --iy) {  // top row of the image is y = +R
        for (int ix = 0; ix < n; ++ix) {
            const std::size_t idx = static_cast<std::size_t>(iy) * n + ix;
            int band = 0;
            if (dmax > 0.0 && grid.mask[idx]) {
                band = static_cast<int>(grid.values[idx] / dmax * levels);
                if (band > levels - 1) band = levels - 1;
            }
            bytes.push_back(static_cast<char>(
                static_cast<unsigned char>(std::lround(band * 255.0 / (levels - 1)))));
        }
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("render_pgm: cannot open " + path);
    f << "P5\n" << n << ' ' << n << "\n255\n";
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    f.flush();
    if (!f.good()) throw IoError("render_pgm: write failed for " + path);
}

double pearson_on_annulus(const DensityGrid& a, const DensityGrid& b, double r_lo,
                          double r_hi, int block) {
    if (a.n_cells != b.n_cells || a.radius != b.radius)
        throw std::invalid_argument("pearson_on_annulus: grid shapes differ");
    const int n = a.n_cells;
    if (block < 1 || n % block != 0)
        throw std::invalid_argument("pearson_on_annulus: block must divide n_cells");
    const int nb = n / block;
    const double hb = 2.0 * a.radius / nb;
    const double inv_cells = 1.0 / (static_cast<double>(block) * block);
    double su = 0.0, sv = 0.0, suu = 0.0, svv = 0.0, suv = 0.0;
    long m = 0;
    for (int by = 0; by < nb; ++by) {
        const double yc = -a.radius + (by + 0.5) * hb;
        for (int bx = 0; bx < nb; ++bx) {
            const double xc = -a.radius + (bx + 0.5) * hb;
            const double r = std::sqrt(xc * xc + yc * yc);
            if (r < r_lo || r > r_hi) continue;
            double u = 0.0, v = 0.0;
            for (int dy = 0; dy < block; ++dy) {
                const std::size_t row = static_cast<std::size_t>(by * block + dy) * n;
                for (int dx = 0; dx < block; ++dx) {
                    const std::size_t idx = row + bx * block + dx;
                    u += a.values[idx];
                    v += b.values[idx];
                }
            }
            u *= inv_cells;
            v *= inv_cells;
            su += u;
            sv += v;
            suu += u * u;
            svv += v * v;
            suv += u * v;
            ++m;
        }
    }
    if (m < 2) throw std::domain_error("pearson_on_annulus: too few samples in the annulus");
    const double cov = suv - su * sv / m;
    const double var_u = suu - su * su / m;
    const double var_v = svv - sv * sv / m;
    if (!(var_u > 0.0) || !(var_v > 0.0))
        throw std::domain_error("pearson_on_annulus: a grid is constant on the annulus");
    return cov / std::sqrt(var_u * var_v);
}

}  // namespace scars
