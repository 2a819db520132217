#include "flatsys/constructions.hpp"

#include <cctype>
#include <cmath>
#include <deque>
#include <numbers>
#include <sstream>

#include "flatsys/delaunay.hpp"
#include "flatsys/error.hpp"

namespace flatsys {

namespace {

using TS = TriangulatedSurface;

const double kSqrt3 = std::sqrt(3.0);

// Unit-triangle lattice: i*u + j*w.
Vec2 lat(int i, int j)
{
    return {i + 0.5 * j, 0.5 * kSqrt3 * j};
}

std::vector<Vec2> lattice_polygon(std::initializer_list<std::pair<int, int>> pts)
{
    std::vector<Vec2> out;
    for (auto [i, j] : pts) out.push_back(lat(i, j));
    return out;
}

using Gluings = std::vector<std::pair<EdgeSlot, EdgeSlot>>;

Gluings single_polygon_pairs(std::initializer_list<std::pair<int, int>> pairs)
{
    Gluings g;
    for (auto [a, b] : pairs) g.push_back({{0, a}, {0, b}});
    return g;
}

SurfaceSpec origami_spec(const Origami& o, bool sheared)
{
    const Vec2 right = {1.0, 0.0};
    const Vec2 up = sheared ? lat(0, 1) : Vec2{0.0, 1.0};
    SurfaceSpec spec;
    for (int i = 0; i < o.size(); ++i) {
        spec.polygons.push_back({right, up, -right, -up});
        spec.gluings.push_back({{i, 1}, {o.h[i], 3}});
        spec.gluings.push_back({{i, 2}, {o.v[i], 0}});
    }
    return spec;
}

std::vector<CatalogEntry> make_catalog()
{
    const double sys2 = std::sqrt(4.0 / (6.0 * kSqrt3));
    std::vector<CatalogEntry> cat;

    cat.push_back({"S_2",
                   spec_from_vertices({lattice_polygon({{0, 0}, {1, 0}, {2, 0}, {3, 0}, {3, 1}, {2, 1}, {1, 1}, {0, 1}})},
                                      single_polygon_pairs({{0, 6}, {1, 4}, {2, 5}, {3, 7}})),
                   {2}, sys2, true, true, true});

    cat.push_back({"S_1_1",
                   spec_from_vertices({lattice_polygon({{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0},
                                                        {4, 1}, {3, 1}, {2, 1}, {1, 1}, {0, 1}})},
                                      single_polygon_pairs({{0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9}})),
                   {1, 1}, std::sqrt(4.0 / (8.0 * kSqrt3)), true, true, true});

    cat.push_back({"S_2_0",
                   spec_from_vertices({lattice_polygon({{0, 0}, {1, -1}, {1, 0}, {2, 0}, {1, 1},
                                                        {1, 2}, {0, 2}, {-1, 3}, {-1, 2}, {-1, 1}})},
                                      single_polygon_pairs({{0, 3}, {1, 7}, {2, 5}, {4, 8}, {6, 9}})),
                   {2, 0}, std::sqrt(4.0 / (10.0 * kSqrt3)), false, true, false});

    cat.push_back({"S_2_0_0",
                   spec_from_vertices({lattice_polygon({{0, 0}, {1, -1}, {1, 0}, {1, 1}, {0, 2}, {-1, 3}, {-1, 2}, {-1, 1}}),
                                       lattice_polygon({{1, 0}, {2, 0}, {2, 1}, {1, 2}, {0, 2}, {1, 1}})},
                                      {{{0, 0}, {1, 2}},
                                       {{0, 1}, {0, 5}},
                                       {{1, 0}, {1, 3}},
                                       {{1, 1}, {0, 6}},
                                       {{0, 4}, {0, 7}},
                                       {{0, 2}, {1, 5}},
                                       {{0, 3}, {1, 4}}}),
                   {2, 0, 0}, std::sqrt(4.0 / (12.0 * kSqrt3)), false, true, false});

    cat.push_back({"FIG2_GLOBAL", origami_spec({{1, 2, 0}, {0, 2, 1}}, true), {2}, sys2, true, true, true});
    return cat;
}

const std::vector<CatalogEntry>& the_catalog()
{
    static const std::vector<CatalogEntry> cat = make_catalog();
    return cat;
}

} // namespace

int cycles_extent(const std::string& text)
{
    int hi = -1, cur = -1;
    for (char ch : text) {
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            cur = (cur < 0 ? 0 : cur * 10) + (ch - '0');
        } else {
            hi = std::max(hi, cur);
            cur = -1;
        }
    }
    return std::max(hi, cur) + 1;
}

std::vector<int> parse_cycles(const std::string& text, int n)
{
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::string t;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
    if (t == "id" || t.empty() || t == "()") return perm;

    std::vector<char> seen(n, 0);
    std::size_t pos = 0;
    auto fail = [&](const std::string& why) {
        throw Error(Errc::ParseError, "bad cycle notation '" + text + "': " + why);
    };
    while (pos < text.size()) {
        const char ch = text[pos];
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++pos;
            continue;
        }
        if (ch != '(') fail("expected '('");
        const std::size_t close = text.find(')', pos);
        if (close == std::string::npos) fail("missing ')'");
        std::string body = text.substr(pos + 1, close - pos - 1);
        for (char& c : body)
            if (c == ',') c = ' ';
        std::istringstream in(body);
        std::vector<int> cyc;
        std::string tok;
        while (in >> tok) {
            for (char c : tok)
                if (!std::isdigit(static_cast<unsigned char>(c))) fail("non-numeric label '" + tok + "'");
            const int x = std::stoi(tok);
            if (x >= n) fail("label " + tok + " out of range");
            if (seen[x]) fail("label " + tok + " repeated");
            seen[x] = 1;
            cyc.push_back(x);
        }
        for (std::size_t k = 0; k < cyc.size(); ++k) perm[cyc[k]] = cyc[(k + 1) % cyc.size()];
        pos = close + 1;
    }
    return perm;
}

TriangulatedSurface build_origami(const Origami& o)
{
    const int n = o.size();
    if (n == 0 || static_cast<int>(o.v.size()) != n) throw Error(Errc::Precondition, "h and v must have equal positive size");
    for (const auto* p : {&o.h, &o.v}) {
        std::vector<char> hit(n, 0);
        for (int x : *p) {
            if (x < 0 || x >= n || hit[x]) throw Error(Errc::Precondition, "h and v must be permutations");
            hit[x] = 1;
        }
    }
    std::vector<char> seen(n, 0);
    std::deque<int> bfs{0};
    seen[0] = 1;
    int count = 1;
    while (!bfs.empty()) {
        const int i = bfs.front();
        bfs.pop_front();
        for (int j : {o.h[i], o.v[i]})
            if (!seen[j]) {
                seen[j] = 1;
                ++count;
                bfs.push_back(j);
            }
    }
    if (count != n)
        throw Error(Errc::DisconnectedOrigami, "squares reachable from 0: " + std::to_string(count) + " of " + std::to_string(n));

    std::vector<Vec2> vecs(6 * n);
    std::vector<int> twins(6 * n), tags(6 * n, -1);
    for (int i = 0; i < n; ++i) {
        const int b = 6 * i;
        vecs[b + 0] = {1, 0};
        vecs[b + 1] = {-1, 1};
        vecs[b + 2] = {0, -1};
        vecs[b + 3] = {0, 1};
        vecs[b + 4] = {-1, 0};
        vecs[b + 5] = {1, -1};
        twins[b + 1] = b + 5;
        twins[b + 5] = b + 1;
        twins[b + 3] = 6 * o.h[i] + 2;
        twins[6 * o.h[i] + 2] = b + 3;
        twins[b + 4] = 6 * o.v[i] + 0;
        twins[6 * o.v[i] + 0] = b + 4;
        tags[b + 0] = 4 * i + 0;
        tags[b + 3] = 4 * i + 1;
        tags[b + 4] = 4 * i + 2;
        tags[b + 2] = 4 * i + 3;
    }
    return TriangulatedSurface(std::move(vecs), std::move(twins), std::move(tags));
}

TriangulatedSurface shear_to_equilateral(const TriangulatedSurface& s)
{
    return s.transformed(1.0, 0.5, 0.0, 0.5 * kSqrt3);
}

TriangulatedSurface unshear_from_equilateral(const TriangulatedSurface& s)
{
    return s.transformed(1.0, -1.0 / kSqrt3, 0.0, 2.0 / kSqrt3);
}

const std::vector<std::string>& catalog_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& e : the_catalog()) out.push_back(e.name);
        return out;
    }();
    return names;
}

const CatalogEntry& catalog_entry(const std::string& name)
{
    for (const auto& e : the_catalog())
        if (e.name == name) return e;
    throw Error(Errc::UnknownName, "unknown catalog surface '" + name + "'");
}

TriangulatedSurface catalog(const std::string& name)
{
    return delaunayize(build_surface(catalog_entry(name).spec)).surface;
}

SaddleConnection tagged_edge(const TriangulatedSurface& s, int slot)
{
    for (int h = 0; h < s.num_half_edges(); ++h)
        if (s.tag(h) == slot) return canonical(s, edge_connection(s, h));
    throw Error(Errc::NoSuchConnection, "no edge carries slot " + std::to_string(slot));
}

IndexedConnection find_index_zero_closed_systolic(const TriangulatedSurface& s, int k)
{
    const auto sys = systole(s);
    for (const auto& sc : sys.minimizers) {
        if (!sc.is_closed() || s.order(sc.start) != k) continue;
        for (BypassSide side : {BypassSide::Left, BypassSide::Right}) {
            const int ind = turning_index(s, sc, side);
            if (ind == 0) return {sc, side, ind};
        }
    }
    throw Error(Errc::NoSuchConnection, "no systolic closed saddle connection of index 0 at a zero of order " +
                                            std::to_string(k));
}

} // namespace flatsys
