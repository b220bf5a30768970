#include "gshift_cli/cli.hpp"

#include "render.hpp"

#include "gshift/error.hpp"
#include "gshift/region.hpp"
#include "gshift/solver.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <random>

namespace gshift::cli {

namespace {

namespace fs = std::filesystem;

Json coords(const Element& e, int rank)
{
    Json a = Json::array();
    for (int i = 0; i < rank; ++i)
        a.push_back(e[i]);
    return a;
}

void write_file(const fs::path& p, const std::string& data)
{
    if (p.has_parent_path())
        fs::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f)
        throw Error("cannot write '" + p.string() + "'");
    f << data;
}

void write_json(const fs::path& p, const Json& j)
{
    write_file(p, j.dump(2) + "\n");
}

struct Session {
    ProjectConfig cfg;
    GroupModel group = GroupModel::zd(2);
    std::unique_ptr<WordMetric> metric;
    std::ostream& out;
    std::ostream& err;

    Session(ProjectConfig c, std::ostream& o, std::ostream& e) : cfg(std::move(c)), out(o), err(e)
    {
        try {
            group = build_group(cfg);
        } catch (const Error& ex) {
            throw SchemaError("/group", ex.what());
        }
        GenSet k = GenSet::standard(group);
        if (!cfg.generators.empty()) {
            std::vector<Element> elems;
            for (const auto& v : cfg.generators)
                elems.push_back(group.element(v));
            k = GenSet::make(group, elems);
        }
        metric = std::make_unique<WordMetric>(group, k);
        set_caps(cfg.caps);
        set_thread_count(cfg.threads);
        reset_clock();
    }

    fs::path out_dir() const { return fs::path(cfg.output.dir); }

    SftSpec spec(const std::string& name, const char* where) const
    {
        try {
            return builtin_spec(group, name);
        } catch (const Error& e) {
            throw SchemaError(where, e.what());
        }
    }

    std::vector<std::int64_t> fit(std::vector<std::int64_t> v, const char* where) const
    {
        const auto rank = static_cast<std::size_t>(group.rank());
        if (v.size() == 1)
            v.assign(rank, v[0]);
        if (v.size() != rank)
            throw SchemaError(where, "expected " + std::to_string(rank) + " entries");
        return v;
    }

    Shape window() const
    {
        if (cfg.sample.ball)
            return metric->ball(*cfg.sample.ball);
        if (group.kind() == GroupKind::Torus)
            return box_shape(group, std::vector<std::int64_t>(group.rank(), 0), group.moduli());
        if (group.kind() != GroupKind::Zd)
            throw SchemaError("/sample/ball", "box windows need Zd or a torus; give a ball radius");
        return box_shape(group, fit(cfg.sample.origin, "/sample/origin"), fit(cfg.sample.window, "/sample/window"));
    }

    PointWindow sample() const
    {
        const auto w = window();
        if (cfg.sample.kind == "rotation2d") {
            if (group.kind() != GroupKind::Zd || group.rank() != 2)
                throw SchemaError("/sample/kind", "rotation2d samples live on zd:2");
            return PointWindow::rotation2d(group, w, cfg.sample.alpha, cfg.sample.beta);
        }
        return PointWindow::random(group, w, cfg.sample.alphabet, cfg.seed);
    }

    HomParams params() const
    {
        if (cfg.mode == HomMode::Theorem)
            return HomParams::theorem(*metric);
        return HomParams::demo(cfg.n0, cfg.m0);
    }
};

Json verify_json(const VerifyResult& v, int rank)
{
    Json j;
    j["ok"] = v.ok;
    j["checked"] = v.checked;
    if (v.witness)
        j["witness"] = coords(*v.witness, rank);
    return j;
}

Json tiling_summary(const TilingWindow& t, const SeparationCover& cover)
{
    Json j;
    j["window_cells"] = t.window.size();
    j["tile_cells"] = t.tile.size();
    j["cover_entries"] = cover.size();
    j["undetermined"] = cover.undetermined();
    j["centers"] = t.centers().size();
    j["safety_radius"] = t.safety_radius;
    j["conservative_radius"] = t.conservative_radius;
    j["safe_cells"] = t.safe_count();
    return j;
}

struct TileRun {
    PointWindow x;
    SeparationCover cover;
};

TileRun build_cover_for(const Session& s, int n0)
{
    auto x = s.sample();
    const Shape& f = s.metric->ball(n0);
    const int r_sep = s.cfg.r_sep.value_or(default_separation_radius(*s.metric, f));
    auto cover = build_cover(x, *s.metric, f, r_sep);
    return {std::move(x), std::move(cover)};
}

std::size_t forbidden_windows(const SftSpec& y, const Pattern& p)
{
    if (p.empty())
        return 0;
    const Region reg(y.group(), p.shape());
    const ConstraintSystem cs(y, reg);
    std::vector<int> values(p.symbols().begin(), p.symbols().end());
    std::size_t bad = 0;
    for (std::size_t w = 0; w < cs.window_count(); ++w)
        bad += !cs.window_ok(w, values);
    return bad;
}

Json stage_json(const StageReport& r)
{
    Json j;
    j["m"] = r.m;
    j["tiles"] = r.tiles;
    j["tiles_filled"] = r.tiles_filled;
    j["u_yes"] = r.u_yes;
    j["u_maybe"] = r.u_maybe;
    j["v_yes"] = r.v_yes;
    j["v_maybe"] = r.v_maybe;
    j["disjoint"] = {{"checked", r.disjoint_checked}, {"violations", r.disjoint_violations}};
    j["contains_u"] = {{"checked", r.contains_u_checked}, {"violations", r.contains_u_violations}};
    j["contains_v"] = {{"checked", r.contains_v_checked}, {"violations", r.contains_v_violations}};
    j["u_forbidden"] = r.u_forbidden;
    j["overwrite_violations"] = r.overwrite_violations;
    j["ok"] = r.ok();
    return j;
}

Json hom_json(const HomRun& run, const SftSpec& y, const TileRun& tr)
{
    Json j;
    j["params"] = {{"mode", to_string(run.params.mode)},
                   {"n0", run.params.n0},
                   {"m0", run.params.m0 ? Json(*run.params.m0) : Json(nullptr)},
                   {"c0", run.params.c0}};
    j["tiling"] = tiling_summary(run.tiling, tr.cover);
    Json st = Json::array();
    for (const auto& s : run.stages)
        st.push_back(stage_json(s.report));
    j["stages"] = st;
    j["safety_radius"] = run.safety_radius;
    j["safe_cells"] = run.safe_cells;
    j["all_of_g_violations"] = run.all_of_g_violations;
    j["lemmas_ok"] = run.lemmas_ok();
    const auto bad = forbidden_windows(y, run.output);
    j["output"] = {{"spec", y.name()}, {"cells", run.output.size()}, {"forbidden_windows", bad}};
    const auto bc = block_code_radius(run.params, run.tiling);
    j["block_code_radius"] = {{"phi1", bc.phi1}, {"phi0", bc.phi0}, {"total", bc.total}};
    return j;
}

// Symbols of p per window cell, -1 elsewhere.
std::vector<int> cell_values(const Shape& window, const Pattern& p)
{
    std::vector<int> v(window.size(), -1);
    std::size_t j = 0;
    for (std::size_t i = 0; i < window.size() && j < p.size(); ++i)
        if (window[i] == p.shape()[j])
            v[i] = p.symbols()[j++];
    return v;
}

Json pattern_json(const Shape& window, const Pattern& p, int rank, const std::optional<Raster>& raster)
{
    Json j;
    j["cells"] = p.size();
    if (raster) {
        const auto v = cell_values(window, p);
        std::vector<std::vector<int>> rows(raster->height, std::vector<int>(raster->width, -1));
        for (std::size_t i = 0; i < v.size(); ++i)
            rows[raster->row[i]][raster->col[i]] = v[i];
        j["origin"] = {raster->x0, raster->y0};
        j["rows"] = rows;
    } else {
        Json cells = Json::array();
        for (std::size_t i = 0; i < p.size(); ++i)
            cells.push_back({coords(p.shape()[i], rank), p.symbols()[i]});
        j["symbols"] = cells;
    }
    return j;
}

void emit_stages(const HomRun& run, const fs::path& dir, const Session& s)
{
    const auto raster = Raster::of(s.group, run.tiling.window);
    if (!raster)
        throw PreconditionError("stage rendering needs a rank-2 Zd or torus window");
    write_file(dir / "tiling.svg", tiling_svg(*raster, run.tiling));
    for (const auto& st : run.stages)
        write_file(dir / ("stage_" + std::to_string(st.m) + ".svg"), stage_svg(*raster, st));
}

HomRun run_hom(const Session& s, const TileRun& tr, const SftSpec& y)
{
    HomOptions opt;
    opt.abort_on_violation = false;
    return construct_hom(tr.x, tr.cover, y, *s.metric, s.params(), opt);
}

int cmd_tile(Session& s, bool svg)
{
    const int n0 = s.params().n0;
    const auto tr = build_cover_for(s, n0);
    const auto& f = s.metric->ball(n0);
    const auto t = quasi_tile(tr.x, tr.cover, f);
    const auto dis = check_disjoint(t, f);
    const auto cov = check_covering(t, t.separation);
    const int rank = s.group.rank();

    Json j;
    j["command"] = "tile";
    j["config"] = to_json(s.cfg);
    j["n0"] = n0;
    j["summary"] = tiling_summary(t, tr.cover);
    j["disjoint"] = verify_json(dis, rank);
    j["covering"] = verify_json(cov, rank);
    Json cs = Json::array();
    for (const auto& c : t.centers())
        cs.push_back(coords(c, rank));
    j["centers"] = cs;
    write_json(s.out_dir() / "tiling.json", j);
    if (svg || s.cfg.output.svg) {
        if (const auto raster = Raster::of(s.group, t.window))
            write_file(s.out_dir() / "tiling.svg", tiling_svg(*raster, t));
    }
    j.erase("centers");
    s.out << j.dump(2) << "\n";
    return dis.ok && cov.ok ? kOk : kCheckFailed;
}

int cmd_hom(Session& s, const std::optional<std::string>& emit)
{
    const auto y = s.spec(s.cfg.target, "/target");
    const auto tr = build_cover_for(s, s.params().n0);
    const auto run = run_hom(s, tr, y);
    Json j;
    j["command"] = "hom";
    j["config"] = to_json(s.cfg);
    j["result"] = hom_json(run, y, tr);
    const auto raster = Raster::of(s.group, run.tiling.window);
    write_json(s.out_dir() / "hom.json", j);
    write_json(s.out_dir() / "output.json", pattern_json(run.tiling.window, run.output, s.group.rank(), raster));
    if (raster && s.cfg.output.pgm) {
        const int k = static_cast<int>(y.alphabet_size());
        write_file(s.out_dir() / "output.pgm", pgm(*raster, cell_values(run.tiling.window, run.output), k));
    }
    if (emit)
        emit_stages(run, fs::path(*emit), s);
    s.out << j["result"].dump(2) << "\n";
    return run.lemmas_ok() && j["result"]["output"]["forbidden_windows"] == 0 ? kOk : kCheckFailed;
}

int cmd_render(Session& s)
{
    const auto y = s.spec(s.cfg.target, "/target");
    const auto tr = build_cover_for(s, s.params().n0);
    const auto run = run_hom(s, tr, y);
    emit_stages(run, s.out_dir(), s);
    const auto raster = Raster::of(s.group, run.tiling.window);
    int top = 0;
    for (auto v : tr.x.x.symbols())
        top = std::max<int>(top, v);
    write_file(s.out_dir() / "sample.pgm", pgm(*raster, cell_values(run.tiling.window, tr.x.x), top + 1));
    write_file(s.out_dir() / "output.pgm",
               pgm(*raster, cell_values(run.tiling.window, run.output), static_cast<int>(y.alphabet_size())));
    Json j;
    j["command"] = "render";
    j["files"] = Json::array({"tiling.svg", "sample.pgm", "output.pgm"});
    for (const auto& st : run.stages)
        j["files"].push_back("stage_" + std::to_string(st.m) + ".svg");
    s.out << j.dump(2) << "\n";
    return kOk;
}

int cmd_entropy(Session& s, const std::string& spec_name, const std::string& method, int n,
                const std::optional<std::string>& shape)
{
    const auto spec = s.spec(spec_name, "/entropy/spec");
    EntropyOptions opt;
    if (shape)
        opt.shape = *shape == "ball" ? EntropyShape::Ball : *shape == "box" ? EntropyShape::Box : EntropyShape::Strip;
    const auto m = parse_entropy_method(method);
    const auto r = entropy_estimate(spec, *s.metric, n, m, opt);
    Json j;
    j["spec"] = spec_name;
    j["method"] = to_string(m);
    j["n"] = n;
    j["value"] = r.value;
    j["bound_kind"] = to_string(r.bound);
    j["shape"] = r.shape;
    j["cells"] = r.cells;
    if (r.lower)
        j["lower"] = *r.lower;
    if (r.upper)
        j["upper"] = *r.upper;
    j["units"] = "nats";
    j["value_bits"] = r.value / std::log(2.0);
    s.out << j.dump(2) << "\n";
    return kOk;
}

int cmd_check_fep(Session& s, const std::string& spec_name, int radius)
{
    const auto spec = s.spec(spec_name, "/target");
    const auto r = check_fep_bruteforce(spec, *s.metric, radius);
    Json j;
    j["spec"] = spec_name;
    j["radius"] = radius;
    j["ok"] = r.ok;
    j["checked"] = r.checked;
    if (r.counterexample)
        j["counterexample"] = describe(*r.counterexample, s.group.rank());
    s.out << j.dump(2) << "\n";
    return r.ok ? kOk : kCheckFailed;
}

SiCheckResult si_k4(const Session& s, const SftSpec& spec, int radius)
{
    const Shape k4 = power(s.group, symmetrize(s.group, spec.witness()), 4);
    return check_si(spec, *s.metric, k4, radius);
}

int cmd_check_si(Session& s, const std::string& spec_name, int radius)
{
    const auto spec = s.spec(spec_name, "/target");
    const auto r = si_k4(s, spec, radius);
    Json j;
    j["spec"] = spec_name;
    j["radius"] = radius;
    j["si_shape"] = "K^4";
    j["ok"] = r.ok;
    j["shape_pairs"] = r.shape_pairs;
    j["pattern_pairs"] = r.pattern_pairs;
    if (r.counterexample) {
        j["counterexample"] = {describe(r.counterexample->first, s.group.rank()),
                               describe(r.counterexample->second, s.group.rank())};
    }
    s.out << j.dump(2) << "\n";
    return r.ok ? kOk : kCheckFailed;
}

// Random pairs u, v on S·K⁻¹K agreeing off S, both locally allowed; their
// windowed extender sets must coincide.
Json extender_lemma(const Session& s, const SftSpec& y)
{
    Json j;
    j["name"] = "extender";
    const auto& g = s.group;
    if (g.rank() != 2 || (g.kind() != GroupKind::Zd && g.kind() != GroupKind::Torus)) {
        j["status"] = "skip";
        j["reason"] = "needs a rank-2 box window";
        return j;
    }
    const int w = s.cfg.checks.extender_window;
    const int want = s.cfg.checks.extender_pairs;
    const Shape win = box_shape(g, {0, 0}, {w, w});
    const Shape core = box_shape(g, {1, 1}, {w - 2, w - 2});
    const Shape kk = product(g, inverse(g, y.witness()), y.witness());
    const auto k = y.alphabet_size();
    std::mt19937_64 rng(s.cfg.seed);
    int done = 0, equal = 0;
    std::uint64_t attempts = 0;
    const std::uint64_t max_attempts = 1000ull * static_cast<std::uint64_t>(want) + 1000;
    while (done < want && attempts++ < max_attempts) {
        std::vector<Element> pick;
        for (const auto& x : core)
            if (rng() % 3 == 0)
                pick.push_back(x);
        if (pick.empty())
            continue;
        const Shape sh = Shape::from_unsorted(pick);
        const Shape hull = product(g, sh, kk);
        std::vector<Symbol> sym(hull.size());
        for (auto& x : sym)
            x = static_cast<Symbol>(rng() % k);
        const Pattern u(hull, sym);
        if (!locally_allowed(y, u))
            continue;
        std::vector<Symbol> inner(sh.size());
        for (auto& x : inner)
            x = static_cast<Symbol>(rng() % k);
        const Pattern v = union_patterns(restrict(u, shape_difference(hull, sh)), Pattern(sh, inner));
        if (!locally_allowed(y, v))
            continue;
        ++done;
        equal += extender_equal_by_boundary(y, sh, u, v, win);
    }
    j["pairs"] = done;
    j["equal"] = equal;
    j["status"] = done == want && equal == done ? "pass" : "fail";
    return j;
}

Json lemma(const std::string& name, bool ok, Json detail = Json::object())
{
    Json j;
    j["name"] = name;
    j["status"] = ok ? "pass" : "fail";
    for (auto it = detail.begin(); it != detail.end(); ++it)
        j[it.key()] = it.value();
    return j;
}

int cmd_lemmas(Session& s)
{
    const auto y = s.spec(s.cfg.target, "/target");
    const auto params = s.params();
    const auto tr = build_cover_for(s, params.n0);
    const auto run = run_hom(s, tr, y);
    const auto& t = run.tiling;
    const auto& f = s.metric->ball(params.n0);
    Json list = Json::array();

    const auto dis = check_disjoint(t, f);
    list.push_back(lemma("quasi_tiling.disjoint", dis.ok, {{"checked", dis.checked}}));
    const auto cov = check_covering(t, t.separation);
    list.push_back(lemma("quasi_tiling.covering", cov.ok, {{"checked", cov.checked}}));

    const double c0 = doubling_constant(*s.metric, 2 * params.n0);
    int max_deg = -1;
    std::size_t defined = 0;
    for (int v : degree_map(t, *s.metric, params.n0, params.n0))
        if (v >= 0) {
            ++defined;
            max_deg = std::max(max_deg, v);
        }
    list.push_back(lemma("bounded_degree", defined > 0 && max_deg <= c0 * c0,
                         {{"max_degree", max_deg}, {"bound", c0 * c0}, {"cells", defined}}));

    std::size_t d_checked = 0, d_bad = 0, cu_checked = 0, cu_bad = 0, cv_checked = 0, cv_bad = 0, forb = 0, over = 0;
    for (const auto& st : run.stages) {
        const auto& r = st.report;
        d_checked += r.disjoint_checked;
        d_bad += r.disjoint_violations;
        cu_checked += r.contains_u_checked;
        cu_bad += r.contains_u_violations;
        cv_checked += r.contains_v_checked;
        cv_bad += r.contains_v_violations;
        forb += r.u_forbidden;
        over += r.overwrite_violations;
    }
    list.push_back(lemma("stage.disjoint", d_bad == 0, {{"checked", d_checked}, {"violations", d_bad}}));
    list.push_back(lemma("stage.contains_u", cu_bad == 0, {{"checked", cu_checked}, {"violations", cu_bad}}));
    list.push_back(lemma("stage.contains_v", cv_bad == 0, {{"checked", cv_checked}, {"violations", cv_bad}}));
    list.push_back(lemma("stage.consistency", forb == 0 && over == 0,
                         {{"u_forbidden", forb}, {"overwrite_violations", over}}));
    list.push_back(lemma("all_of_g", run.all_of_g_violations == 0 && run.safe_cells > 0,
                         {{"safe_cells", run.safe_cells}, {"violations", run.all_of_g_violations}}));
    const auto bad = forbidden_windows(y, run.output);
    list.push_back(lemma("hom.output_allowed", bad == 0, {{"cells", run.output.size()}, {"forbidden_windows", bad}}));

    const auto si = si_k4(s, y, s.cfg.checks.si_radius);
    list.push_back(lemma("si_k4", si.ok,
                         {{"radius", s.cfg.checks.si_radius}, {"pattern_pairs", si.pattern_pairs}}));
    list.push_back(extender_lemma(s, y));
    const auto fep = check_fep_bruteforce(y, *s.metric, s.cfg.checks.fep_radius);
    list.push_back(lemma("fep", fep.ok, {{"radius", s.cfg.checks.fep_radius}, {"checked", fep.checked}}));

    bool all = true;
    for (const auto& l : list)
        all = all && l["status"] != "fail";
    Json j;
    j["command"] = "lemmas";
    j["config"] = to_json(s.cfg);
    j["params"] = {{"n0", run.params.n0}, {"m0", run.params.m0 ? Json(*run.params.m0) : Json(nullptr)}};
    j["lemmas"] = list;
    j["pass"] = all;
    write_json(s.out_dir() / "lemmas.json", j);
    s.out << j.dump(2) << "\n";
    return all ? kOk : kCheckFailed;
}

struct Flags {
    std::optional<std::string> config, out, group, sample, target, mode, emit, shape, spec, method;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    std::optional<double> alpha, beta;
    std::optional<std::int64_t> window;
    std::optional<int> n0, m0, r_sep, width, radius;
    bool svg = false;
};

void add_common(CLI::App* c, Flags& f)
{
    c->add_option("--config", f.config, "JSON project config");
    c->add_option("--seed", f.seed, "random seed");
    c->add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber);
    c->add_option("--out", f.out, "output directory");
    c->add_option("--group", f.group, "zd:<d>, torus:<m1>x<m2>, heisenberg3");
}

void add_experiment(CLI::App* c, Flags& f)
{
    c->add_option("--sample,--x-sample", f.sample, "rotation2d or random");
    c->add_option("--alpha", f.alpha);
    c->add_option("--beta", f.beta);
    c->add_option("--window", f.window, "side of the square window")->check(CLI::PositiveNumber);
    c->add_option("--n0", f.n0)->check(CLI::PositiveNumber);
    c->add_option("--m0", f.m0)->check(CLI::PositiveNumber);
    c->add_option("--r-sep", f.r_sep)->check(CLI::NonNegativeNumber);
    c->add_option("--y-spec,--target", f.target, "target SFT");
    c->add_option("--mode", f.mode, "demo or theorem");
}

ProjectConfig assemble(const Flags& f)
{
    ProjectConfig c = f.config ? load_config(*f.config) : ProjectConfig{};
    if (f.seed)
        c.seed = *f.seed;
    if (f.threads)
        c.threads = *f.threads;
    if (f.out)
        c.output.dir = *f.out;
    if (f.group) {
        c.group = *f.group;
        c.group_table.clear();
    }
    if (f.sample) {
        if (*f.sample != "rotation2d" && *f.sample != "random")
            throw SchemaError("/sample/kind", "expected rotation2d or random");
        c.sample.kind = *f.sample;
    }
    if (f.alpha)
        c.sample.alpha = *f.alpha;
    if (f.beta)
        c.sample.beta = *f.beta;
    if (f.window) {
        c.sample.window = {*f.window};
        c.sample.ball.reset();
    }
    if (f.n0)
        c.n0 = *f.n0;
    if (f.m0)
        c.m0 = *f.m0;
    if (f.r_sep)
        c.r_sep = *f.r_sep;
    if (f.target)
        c.target = *f.target;
    if (f.mode) {
        if (*f.mode == "demo")
            c.mode = HomMode::Demo;
        else if (*f.mode == "theorem")
            c.mode = HomMode::Theorem;
        else
            throw SchemaError("/hom/mode", "expected demo or theorem");
    }
    return c;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Equivariant SFT embedding experiments"};
    app.require_subcommand(1);
    Flags f;
    auto* tile = app.add_subcommand("tile", "quasi-tiling of a sampled window");
    auto* hom = app.add_subcommand("hom", "staged homomorphism into a target SFT");
    auto* entropy = app.add_subcommand("entropy", "entropy bounds");
    auto* fep = app.add_subcommand("check-fep", "brute-force finite extension check");
    auto* si = app.add_subcommand("check-si", "strong irreducibility with shape K^4");
    auto* lemmas = app.add_subcommand("lemmas", "full invariant suite");
    auto* render = app.add_subcommand("render", "stage SVGs and PGM grids");
    for (auto* c : {tile, hom, entropy, fep, si, lemmas, render})
        add_common(c, f);
    for (auto* c : {tile, hom, lemmas, render})
        add_experiment(c, f);
    tile->add_flag("--svg", f.svg, "also write tiling.svg");
    hom->add_option("--emit-stages", f.emit, "directory for per-stage SVGs");
    entropy->add_option("--spec", f.spec);
    entropy->add_option("--method", f.method, "count or transfer");
    entropy->add_option("--width,--n", f.width)->check(CLI::NonNegativeNumber);
    entropy->add_option("--shape", f.shape)->check(CLI::IsMember({"ball", "box", "strip"}));
    for (auto* c : {fep, si}) {
        c->add_option("--spec", f.spec);
        c->add_option("--radius", f.radius)->check(CLI::NonNegativeNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kSchemaError;
    }

    try {
        Session s(assemble(f), out, err);
        if (tile->parsed())
            return cmd_tile(s, f.svg);
        if (hom->parsed())
            return cmd_hom(s, f.emit);
        if (render->parsed())
            return cmd_render(s);
        if (lemmas->parsed())
            return cmd_lemmas(s);
        if (entropy->parsed())
            return cmd_entropy(s, f.spec.value_or(s.cfg.entropy.spec), f.method.value_or(s.cfg.entropy.method),
                               f.width.value_or(s.cfg.entropy.width), f.shape ? f.shape : s.cfg.entropy.shape);
        if (fep->parsed())
            return cmd_check_fep(s, f.spec.value_or(s.cfg.target), f.radius.value_or(s.cfg.checks.fep_radius));
        if (si->parsed())
            return cmd_check_si(s, f.spec.value_or(s.cfg.target), f.radius.value_or(s.cfg.checks.si_radius));
    } catch (const SchemaError& e) {
        err << "schema error at " << e.what() << "\n";
        return kSchemaError;
    } catch (const ResourceError& e) {
        err << "resource cap: " << e.what() << "\n";
        return kResourceError;
    } catch (const PreconditionError& e) {
        err << "invalid configuration: " << e.what() << "\n";
        return kSchemaError;
    } catch (const std::exception& e) {
        err << "check failed: " << e.what() << "\n";
        return kCheckFailed;
    }
    return kSchemaError;
}

} // namespace gshift::cli
