#include "flatsys/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "flatsys/constructions.hpp"
#include "flatsys/deform.hpp"
#include "flatsys/delaunay.hpp"
#include "flatsys/error.hpp"
#include "flatsys/geodesics.hpp"
#include "flatsys/json_io.hpp"
#include "flatsys/topology.hpp"

namespace flatsys {

namespace {

using ojson = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Source {
    std::string surface;
    std::string catalog;
    bool normalize = false;
};

void add_source(CLI::App* cmd, Source& src, bool normalize_flag = true)
{
    cmd->add_option("--surface", src.surface, "SurfaceSpec JSON file");
    cmd->add_option("--catalog", src.catalog, "Catalog surface name");
    if (normalize_flag) cmd->add_flag("--normalize", src.normalize, "Scale to area 1");
}

SurfaceSpec load_spec(const Source& src)
{
    if (src.surface.empty() == src.catalog.empty()) throw UsageError("exactly one of --surface or --catalog is required");
    if (!src.catalog.empty()) return catalog_entry(src.catalog).spec;
    return read_spec_file(src.surface);
}

TriangulatedSurface load_surface(const Source& src)
{
    (void)load_spec(src); // source checks
    TriangulatedSurface s = src.catalog.empty() ? delaunayize(build_surface(read_spec_file(src.surface))).surface
                                                : catalog(src.catalog);
    return src.normalize ? normalize_area(s) : s;
}

// A --left / --right operand: catalog name or spec file.
TriangulatedSurface load_operand(const std::string& what)
{
    for (const auto& n : catalog_names())
        if (n == what) return catalog(n);
    return delaunayize(build_surface(read_spec_file(what))).surface;
}

ojson vec_json(Vec2 v)
{
    return ojson::array({v.x, v.y});
}

ojson connection_json(const SaddleConnection& sc)
{
    ojson j;
    j["start"] = sc.start;
    j["end"] = sc.end;
    j["holonomy"] = vec_json(sc.holonomy);
    j["length"] = sc.length;
    return j;
}

ojson signature_json(const TriangulatedSurface& s)
{
    const auto sig = surface_invariants(s);
    ojson j;
    j["genus"] = sig.genus;
    j["orders"] = sig.orders;
    j["area"] = sig.area;
    return j;
}

ojson parity_or_null(const TriangulatedSurface& s)
{
    for (int v = 0; v < s.num_vertices(); ++v)
        if (s.order(v) % 2 != 0) return nullptr;
    return spin_parity(s);
}

int exit_code(Errc c)
{
    switch (c) {
    case Errc::FlipLimitExceeded:
    case Errc::SlitOnBoundary:
    case Errc::NotDelaunay:
        return kExitInternal;
    default:
        return kExitValidation;
    }
}

void write_error(std::ostream& err, const std::string& code, const std::string& message)
{
    ojson j;
    j["error"] = {{"code", code}, {"message", message}};
    err << j.dump() << '\n';
}

} // namespace

std::string render_svg(const SurfaceSpec& spec)
{
    constexpr double scale = 60.0, margin = 30.0, gap = 1.0;
    std::vector<std::vector<Vec2>> polys;
    double x_off = 0.0, y_min = 0.0, y_max = 0.0;
    for (const auto& edges : spec.polygons) {
        std::vector<Vec2> pts{Vec2{}};
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) pts.push_back(pts.back() + edges[i]);
        double lo = pts[0].x, hi = pts[0].x;
        for (auto p : pts) {
            lo = std::min(lo, p.x);
            hi = std::max(hi, p.x);
            y_min = std::min(y_min, p.y);
            y_max = std::max(y_max, p.y);
        }
        for (auto& p : pts) p.x += x_off - lo;
        x_off += (hi - lo) + gap;
        polys.push_back(std::move(pts));
    }
    std::map<std::pair<int, int>, int> label;
    for (std::size_t k = 0; k < spec.gluings.size(); ++k) {
        label[{spec.gluings[k].first.polygon, spec.gluings[k].first.edge}] = static_cast<int>(k);
        label[{spec.gluings[k].second.polygon, spec.gluings[k].second.edge}] = static_cast<int>(k);
    }
    const double width = std::max(0.0, x_off - gap) * scale + 2 * margin;
    const double height = (y_max - y_min) * scale + 2 * margin;
    auto X = [&](double x) { return margin + x * scale; };
    auto Y = [&](double y) { return margin + (y_max - y) * scale; };

    std::ostringstream svg;
    svg << std::fixed << std::setprecision(2);
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    for (std::size_t p = 0; p < polys.size(); ++p) {
        const auto& pts = polys[p];
        svg << "  <polygon fill=\"#eef3fb\" stroke=\"#223\" stroke-width=\"1.5\" points=\"";
        for (auto q : pts) svg << X(q.x) << ',' << Y(q.y) << ' ';
        svg << "\"/>\n";
        for (std::size_t e = 0; e < pts.size(); ++e) {
            const Vec2 a = pts[e], b = pts[(e + 1) % pts.size()];
            const Vec2 m = 0.5 * (a + b);
            const Vec2 d = b - a;
            const Vec2 inward = rotated(d / d.norm(), 1.5707963267948966) * 0.18;
            auto it = label.find({static_cast<int>(p), static_cast<int>(e)});
            const std::string text = it == label.end() ? "?" : std::to_string(it->second);
            svg << "  <text font-size=\"12\" text-anchor=\"middle\" x=\"" << X(m.x + inward.x) << "\" y=\""
                << Y(m.y + inward.y) + 4 << "\">" << text << "</text>\n";
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Translation surface toolkit", "flatsys"};
    app.require_subcommand(1);
    std::string output;
    app.add_option("--output", output, "Write the result to this file");

    Source info_src, sys_src, list_src, del_src, spin_src, hyp_src, cls_src, lm_src, render_src;
    auto* info = app.add_subcommand("info", "Genus, zero orders and area");
    add_source(info, info_src);
    auto* sys = app.add_subcommand("systole", "Relative systole and its minimizers");
    add_source(sys, sys_src);
    auto* sclist = app.add_subcommand("sc-list", "Saddle connections up to a length");
    add_source(sclist, list_src);
    double length = 0.0;
    sclist->add_option("--length", length, "Length bound")->required();
    auto* del = app.add_subcommand("delaunay", "Delaunay cell decomposition");
    add_source(del, del_src);
    auto* spin = app.add_subcommand("spin", "Parity of the spin structure");
    add_source(spin, spin_src);
    auto* hyp = app.add_subcommand("hyperelliptic", "Search for a hyperelliptic involution");
    add_source(hyp, hyp_src);
    auto* cls = app.add_subcommand("classify", "Connected component of the stratum");
    add_source(cls, cls_src);

    auto* cat = app.add_subcommand("catalog", "List catalog surfaces or describe one");
    std::string cat_name;
    cat->add_option("--catalog,--name", cat_name, "Catalog surface name");

    auto* ori = app.add_subcommand("origami", "Square-tiled surface from two permutations");
    ori->set_help_flag("--help", "Print this help message and exit");
    std::string ori_h, ori_v;
    int ori_n = 0;
    bool ori_shear = false, ori_normalize = false;
    ori->add_option("--h", ori_h, "Right-neighbour permutation, cycle notation")->required();
    ori->add_option("--v", ori_v, "Top-neighbour permutation, cycle notation")->required();
    ori->add_option("--n", ori_n, "Number of squares (default: largest label + 1)");
    ori->add_flag("--shear", ori_shear, "Shear squares to pairs of equilateral triangles");
    ori->add_flag("--normalize", ori_normalize, "Scale to area 1");

    auto* glue = app.add_subcommand("glue", "Slit-glue two surfaces along systolic saddle connections");
    std::string left, right, glue_spec;
    int left_sc = 0, right_sc = 0;
    glue->add_option("--left", left, "Spec file or catalog name")->required();
    glue->add_option("--left-sc", left_sc, "Index into the left systole minimizers");
    glue->add_option("--right", right, "Spec file or catalog name")->required();
    glue->add_option("--right-sc", right_sc, "Index into the right systole minimizers");
    glue->add_option("--write-spec", glue_spec, "Also write the glued surface as a SurfaceSpec");

    auto* lm = app.add_subcommand("verify-localmax", "Random perturbation test of systole maximality");
    add_source(lm, lm_src, false);
    LocalMaxOptions lm_opts;
    lm->add_option("--trials", lm_opts.trials, "Number of trials");
    lm->add_option("--eps", lm_opts.epsilon, "Perturbation radius");
    lm->add_option("--seed", lm_opts.seed, "Random seed");
    lm->add_option("--threads", lm_opts.threads, "Worker threads (0 = all cores)");

    auto* quad = app.add_subcommand("quad", "Quadrilateral area and descent step");
    double qa = 0, qb = 1, qc = 1, qd = 0, qalpha = 0;
    quad->add_option("--a", qa, "|MN|")->required();
    quad->add_option("--b", qb, "|NP|");
    quad->add_option("--c", qc, "|PQ|");
    quad->add_option("--d", qd, "|QM|")->required();
    quad->add_option("--alpha", qalpha, "Oriented angle at M (radians)")->required();

    auto* render = app.add_subcommand("render", "SVG net of the polygons");
    add_source(render, render_src, false);

    for (auto* sub : app.get_subcommands([](CLI::App*) { return true; }))
        sub->add_option("--output", output, "Write the result to this file");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        write_error(err, "Usage", e.what());
        return kExitUsage;
    }

    try {
        std::string text;
        ojson j;
        if (info->parsed()) {
            const auto s = load_surface(info_src);
            j = signature_json(s);
            j["vertices"] = s.num_vertices();
            j["triangles"] = s.num_triangles();
            ojson cones = ojson::array();
            for (int v = 0; v < s.num_vertices(); ++v) cones.push_back(s.cone_angle(v));
            j["cone_angles"] = cones;
        } else if (sys->parsed()) {
            const auto r = systole(load_surface(sys_src));
            j["value"] = r.value;
            j["count"] = r.minimizers.size();
            j["multiplicity"] = "per-segment";
            j["minimizers"] = ojson::array();
            for (const auto& sc : r.minimizers) j["minimizers"].push_back(connection_json(sc));
        } else if (sclist->parsed()) {
            const auto list = saddle_connections(load_surface(list_src), length);
            j["length"] = length;
            j["count"] = list.size();
            j["connections"] = ojson::array();
            for (const auto& sc : list) j["connections"].push_back(connection_json(sc));
        } else if (del->parsed()) {
            if (del_src.surface.empty() == del_src.catalog.empty())
                throw UsageError("exactly one of --surface or --catalog is required");
            TriangulatedSurface raw = del_src.catalog.empty() ? build_surface(read_spec_file(del_src.surface))
                                                              : build_surface(catalog_entry(del_src.catalog).spec);
            if (del_src.normalize) raw = normalize_area(raw);
            const auto d = delaunayize(raw);
            j["flips"] = d.flips;
            j["cells"] = ojson::array();
            for (const auto& c : delaunay_cells(d.surface)) {
                ojson cj;
                cj["type"] = c.sides() == 3 ? "triangle" : c.sides() == 4 ? "quadrilateral" : std::to_string(c.sides()) + "-gon";
                cj["sides"] = c.sides();
                cj["side_lengths"] = c.side_lengths(d.surface);
                cj["cyclic"] = c.cyclic;
                cj["radius"] = c.radius;
                j["cells"].push_back(cj);
            }
            j["equilateral"] = equilateral_certificate(d.surface);
        } else if (spin->parsed()) {
            j["parity"] = spin_parity(load_surface(spin_src));
        } else if (hyp->parsed()) {
            const auto s = load_surface(hyp_src);
            const auto tau = find_involution(s);
            j["involution_found"] = tau.has_value();
            if (tau) j["fixed_points"] = tau->fixed_points();
        } else if (cls->parsed()) {
            const auto s = load_surface(cls_src);
            const auto sig = surface_invariants(s);
            const ojson parity = parity_or_null(s);
            const bool h = find_involution(s).has_value();
            j["genus"] = sig.genus;
            j["orders"] = sig.orders;
            j["parity"] = parity;
            j["involution_found"] = h;
            j["component"] = classify_component(sig, parity.is_null() ? std::nullopt : std::optional<int>(parity.get<int>()), h);
        } else if (cat->parsed()) {
            if (cat_name.empty()) {
                j["names"] = catalog_names();
            } else {
                const auto& e = catalog_entry(cat_name);
                j["name"] = e.name;
                j["orders"] = e.orders;
                j["normalized_systole"] = e.normalized_systole;
                j["global_max"] = e.global_max;
                j["local_max"] = e.local_max;
                j["hyperelliptic"] = e.hyperelliptic;
                j["spec"] = spec_to_json(e.spec);
            }
        } else if (ori->parsed()) {
            const int n = ori_n > 0 ? ori_n : std::max({cycles_extent(ori_h), cycles_extent(ori_v), 1});
            Origami o{parse_cycles(ori_h, n), parse_cycles(ori_v, n)};
            TriangulatedSurface s = build_origami(o);
            if (ori_shear) s = shear_to_equilateral(s);
            s = delaunayize(s).surface;
            if (ori_normalize) s = normalize_area(s);
            j["n"] = n;
            j["h"] = o.h;
            j["v"] = o.v;
            const ojson sig = signature_json(s);
            for (const auto& [k, v] : sig.items()) j[k] = v;
            j["systole"] = systole(s).value;
            if (ori_shear) j["equilateral"] = equilateral_certificate(s);
        } else if (glue->parsed()) {
            const auto s1 = load_operand(left);
            const auto s2 = load_operand(right);
            const auto m1 = systole(s1).minimizers;
            const auto m2 = systole(s2).minimizers;
            if (left_sc < 0 || left_sc >= static_cast<int>(m1.size()) || right_sc < 0 ||
                right_sc >= static_cast<int>(m2.size()))
                throw Error(Errc::NoSuchConnection, "minimizer index out of range (left has " + std::to_string(m1.size()) +
                                                        ", right has " + std::to_string(m2.size()) + ")");
            const auto g = slit_glue(s1, m1[left_sc], s2, m2[right_sc]);
            j = signature_json(g);
            j["systole"] = systole(g).value;
            j["parity"] = parity_or_null(g);
            j["involution_found"] = find_involution(g).has_value();
            j["left_connection"] = connection_json(m1[left_sc]);
            j["right_connection"] = connection_json(m2[right_sc]);
            if (!glue_spec.empty()) {
                std::ofstream f(glue_spec);
                if (!f) throw Error(Errc::ParseError, "cannot write '" + glue_spec + "'");
                f << spec_to_json(export_spec(g)).dump(2) << '\n';
            }
        } else if (lm->parsed()) {
            Source src = lm_src;
            src.normalize = true;
            const auto r = verify_local_max(load_surface(src), lm_opts);
            j["base_systole"] = r.base_systole;
            j["trials"] = r.trials;
            j["epsilon"] = r.epsilon;
            j["seed"] = r.seed;
            j["max_observed"] = r.max_observed;
            j["skipped"] = r.skipped;
            j["skipped_trials"] = r.skipped_trials;
            j["verdict"] = r.verdict();
            if (r.counterexample_trial) {
                ojson ce;
                ce["trial"] = *r.counterexample_trial;
                ce["systole"] = r.counterexample_systole;
                ce["delta"] = ojson::array();
                for (auto v : r.counterexample_delta) ce["delta"].push_back(vec_json(v));
                j["counterexample"] = ce;
            } else {
                j["counterexample"] = nullptr;
            }
        } else if (quad->parsed()) {
            const auto q = make_quadrilateral(qa, qb, qc, qd, qalpha);
            j["K"] = q.K;
            j["gamma"] = q.gamma;
            j["shoelace"] = shoelace_area(q);
            j["dK_dalpha"] = quad_area_derivative(q);
            try {
                const auto r = quad_descent(q);
                ojson dj;
                dj["kind"] = r.kind_name();
                if (r.kind == DescentReport::Kind::Descent) dj["direction"] = r.direction;
                dj["step"] = r.step;
                dj["K_after"] = r.K_after;
                j["descent"] = dj;
            } catch (const Error& e) {
                j["descent"] = {{"error", errc_name(e.code())}, {"message", e.what()}};
            }
        } else if (render->parsed()) {
            text = render_svg(load_spec(render_src));
        }
        if (text.empty()) text = j.dump(2) + "\n";
        if (output.empty()) {
            out << text;
        } else {
            std::ofstream f(output);
            if (!f) throw Error(Errc::ParseError, "cannot write '" + output + "'");
            f << text;
        }
        return kExitOk;
    } catch (const UsageError& e) {
        write_error(err, "Usage", e.what());
        return kExitUsage;
    } catch (const Error& e) {
        write_error(err, errc_name(e.code()), e.what());
        return exit_code(e.code());
    } catch (const std::exception& e) {
        write_error(err, "Internal", e.what());
        return kExitInternal;
    }
}

} // namespace flatsys
