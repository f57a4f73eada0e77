#include "dirichlet/grid_field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace dirichlet {

GridField::GridField(Box box, double h) : box_(std::move(box)), h_(h) {
    if (!(h > 0.0)) throw std::invalid_argument("GridField: spacing must be positive");
    const int n = box_.dim();
    if (n != 2 && n != 3) throw std::invalid_argument("GridField: dimension must be 2 or 3");
    counts_.resize(n);
    long total = 1;
    for (int i = 0; i < n; ++i) {
        const double steps = (box_.hi[i] - box_.lo[i]) / h;
        const long m = std::lround(steps);
        if (m < 2 || std::fabs(steps - m) > 1e-9 * std::max(1.0, steps))
            throw std::invalid_argument("GridField: box extent is not an integer multiple of h");
        counts_[i] = static_cast<int>(m) + 1;
        total *= counts_[i];
    }
    values_.assign(total, 0.0);
}

GridField GridField::sampled(const Box& box, double h,
                             const std::function<double(std::span<const double>)>& fn) {
    GridField u(box, h);
    u.for_each_index([&](const std::vector<int>& idx) { u.at(idx) = fn(u.point(idx)); });
    return u;
}

std::vector<double> GridField::point(const std::vector<int>& idx) const {
    std::vector<double> x(dim());
    for (int i = 0; i < dim(); ++i) x[i] = box_.lo[i] + h_ * idx[i];
    return x;
}

bool GridField::is_boundary(const std::vector<int>& idx) const {
    for (int i = 0; i < dim(); ++i)
        if (idx[i] == 0 || idx[i] == counts_[i] - 1) return true;
    return false;
}

bool GridField::is_interior(const std::vector<int>& idx) const {
    for (int i = 0; i < dim(); ++i)
        if (idx[i] < 1 || idx[i] > counts_[i] - 2) return false;
    return true;
}

long GridField::flat(const std::vector<int>& idx) const {
    long k = 0;
    for (int i = 0; i < dim(); ++i) {
        if (idx[i] < 0 || idx[i] >= counts_[i]) throw std::out_of_range("GridField index");
        k = k * counts_[i] + idx[i];
    }
    return k;
}

std::vector<int> GridField::unflat(long k) const {
    std::vector<int> idx(dim());
    for (int i = dim() - 1; i >= 0; --i) {
        idx[i] = static_cast<int>(k % counts_[i]);
        k /= counts_[i];
    }
    return idx;
}

void GridField::for_each_index(const std::function<void(const std::vector<int>&)>& fn) const {
    std::vector<int> idx(dim(), 0);
    bool done = false;
    while (!done) {
        fn(idx);
        int i = dim() - 1;
        while (i >= 0 && ++idx[i] == counts_[i]) idx[i--] = 0;
        done = i < 0;
    }
}

void GridField::for_each_interior(const std::function<void(const std::vector<int>&)>& fn) const {
    for_each_index([&](const std::vector<int>& idx) {
        if (is_interior(idx)) fn(idx);
    });
}

void GridField::for_each_boundary(const std::function<void(const std::vector<int>&)>& fn) const {
    for_each_index([&](const std::vector<int>& idx) {
        if (is_boundary(idx)) fn(idx);
    });
}

double GridField::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::fabs(v));
    return m;
}

bool GridField::all_finite() const {
    for (double v : values_)
        if (!std::isfinite(v)) return false;
    return true;
}

double GridField::interpolate(std::span<const double> x) const {
    const int n = dim();
    std::vector<int> base(n);
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) {
        double t = (x[i] - box_.lo[i]) / h_;
        t = std::min(std::max(t, 0.0), static_cast<double>(counts_[i] - 1));
        base[i] = std::min(static_cast<int>(t), counts_[i] - 2);
        w[i] = t - base[i];
    }
    double acc = 0.0;
    const int corners = 1 << n;
    std::vector<int> idx(n);
    for (int c = 0; c < corners; ++c) {
        double weight = 1.0;
        for (int i = 0; i < n; ++i) {
            const int bit = (c >> i) & 1;
            idx[i] = base[i] + bit;
            weight *= bit ? w[i] : (1.0 - w[i]);
        }
        if (weight != 0.0) acc += weight * at(idx);
    }
    return acc;
}

SymMatrix discrete_hessian(const GridField& u, const std::vector<int>& idx) {
    return discrete_hessian_with_center(u, idx, u.at(idx));
}

SymMatrix discrete_hessian_with_center(const GridField& u, const std::vector<int>& idx, double v) {
    if (!u.is_interior(idx))
        throw std::invalid_argument("discrete_hessian: point lacks a full stencil");
    const int n = u.dim();
    const double h = u.spacing();
    SymMatrix hess(n);
    std::vector<int> p(idx);
    for (int i = 0; i < n; ++i) {
        p[i] = idx[i] + 1;
        const double up = u.at(p);
        p[i] = idx[i] - 1;
        const double um = u.at(p);
        p[i] = idx[i];
        hess.set(i, i, (up + um - 2.0 * v) / (h * h));
        for (int j = 0; j < i; ++j) {
            p[i] = idx[i] + 1;
            p[j] = idx[j] + 1;
            const double upp = u.at(p);
            p[i] = idx[i] - 1;
            p[j] = idx[j] - 1;
            const double umm = u.at(p);
            p[i] = idx[i] + 1;
            const double upm = u.at(p); // +i, -j
            p[i] = idx[i] - 1;
            p[j] = idx[j] + 1;
            const double ump = u.at(p); // -i, +j
            p[i] = idx[i];
            p[j] = idx[j];
            hess.set(i, j, (upp + umm - upm - ump) / (4.0 * h * h));
        }
    }
    return hess;
}

void save_csv(const GridField& u, const std::string& path, const std::string& provenance_json) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    const int n = u.dim();
    for (int i = 0; i < n; ++i) out << "x" << (i + 1) << ",";
    out << "value\n";
    char buf[48];
    u.for_each_index([&](const std::vector<int>& idx) {
        const auto x = u.point(idx);
        for (int i = 0; i < n; ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", x[i]);
            out << buf << ",";
        }
        std::snprintf(buf, sizeof buf, "%.17g", u.at(idx));
        out << buf << "\n";
    });
    out.close();

    nlohmann::ordered_json meta;
    meta["n"] = n;
    meta["h"] = u.spacing();
    meta["box"] = {u.box().lo, u.box().hi};
    meta["provenance"] = nlohmann::ordered_json::parse(provenance_json);
    std::ofstream mout(path + ".meta.json");
    mout << meta.dump(2) << "\n";
}

GridField load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("empty grid CSV: " + path);
    int n = 0;
    {
        std::stringstream ss(header);
        std::string col;
        std::vector<std::string> cols;
        while (std::getline(ss, col, ',')) cols.push_back(col);
        if (cols.size() < 2 || cols.back() != "value")
            throw std::runtime_error("grid CSV header must be x1,...,xn,value");
        n = static_cast<int>(cols.size()) - 1;
    }
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (static_cast<int>(row.size()) != n + 1)
            throw std::runtime_error("grid CSV row width mismatch");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("grid CSV has no data rows");

    // Reconstruct box and spacing from the coordinates (the sidecar, when
    // present, must agree; coordinates are authoritative).
    Box box;
    box.lo.assign(n, std::numeric_limits<double>::infinity());
    box.hi.assign(n, -std::numeric_limits<double>::infinity());
    for (const auto& r : rows)
        for (int i = 0; i < n; ++i) {
            box.lo[i] = std::min(box.lo[i], r[i]);
            box.hi[i] = std::max(box.hi[i], r[i]);
        }
    double h = std::numeric_limits<double>::infinity();
    for (const auto& r : rows)
        for (int i = 0; i < n; ++i) {
            const double d = r[i] - box.lo[i];
            if (d > 1e-12) h = std::min(h, d);
        }
    GridField u(box, h);
    if (u.size() != static_cast<long>(rows.size()))
        throw std::runtime_error("grid CSV row count does not fill the lattice");
    std::vector<int> idx(n);
    for (const auto& r : rows) {
        for (int i = 0; i < n; ++i) idx[i] = static_cast<int>(std::lround((r[i] - box.lo[i]) / h));
        u.at(idx) = r[n];
    }
    return u;
}

} // namespace dirichlet
