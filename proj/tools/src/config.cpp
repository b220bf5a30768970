#include "gshift_cli/cli.hpp"

#include "gshift/error.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace gshift::cli {

SchemaError::SchemaError(std::string pointer, const std::string& message)
    : std::runtime_error((pointer.empty() ? std::string("/") : pointer) + ": " + message), pointer_(std::move(pointer))
{
}

namespace {

std::string escape_token(const std::string& key)
{
    std::string out;
    for (char c : key) {
        if (c == '~')
            out += "~0";
        else if (c == '/')
            out += "~1";
        else
            out += c;
    }
    return out;
}

// Tracks the JSON pointer of the value being parsed so that a syntax error
// can name the key it occurred under.
class PathTracker : public nlohmann::json_sax<Json> {
public:
    std::string pointer() const
    {
        std::string p;
        for (const auto& f : stack_) {
            if (f.array)
                p += "/" + std::to_string(f.index);
            else if (f.has_key)
                p += "/" + escape_token(f.key);
        }
        return p;
    }
    std::string error;

    bool null() override { return value(); }
    bool boolean(bool) override { return value(); }
    bool number_integer(number_integer_t) override { return value(); }
    bool number_unsigned(number_unsigned_t) override { return value(); }
    bool number_float(number_float_t, const string_t&) override { return value(); }
    bool string(string_t&) override { return value(); }
    bool binary(binary_t&) override { return value(); }
    bool start_object(std::size_t) override
    {
        stack_.push_back({false, false, {}, 0});
        return true;
    }
    bool key(string_t& k) override
    {
        stack_.back().has_key = true;
        stack_.back().key = k;
        return true;
    }
    bool end_object() override
    {
        stack_.pop_back();
        return value();
    }
    bool start_array(std::size_t) override
    {
        stack_.push_back({true, false, {}, 0});
        return true;
    }
    bool end_array() override
    {
        stack_.pop_back();
        return value();
    }
    bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception& ex) override
    {
        error = ex.what();
        return false;
    }

private:
    struct Frame {
        bool array;
        bool has_key;
        std::string key;
        std::size_t index;
    };
    bool value()
    {
        if (!stack_.empty() && stack_.back().array)
            ++stack_.back().index;
        return true;
    }
    std::vector<Frame> stack_;
};

class Reader {
public:
    Reader(const Json& j, std::string ptr) : j_(j), ptr_(std::move(ptr))
    {
        if (!j_.is_object())
            throw SchemaError(ptr_, "expected an object");
    }
    ~Reader() = default;

    // Marks k as known whether or not it is present.
    bool has(const char* k) const
    {
        seen_.insert(k);
        return j_.contains(k) && !j_.at(k).is_null();
    }
    const Json& at(const char* k)
    {
        seen_.insert(k);
        return j_.at(k);
    }
    std::string where(const char* k) const { return ptr_ + "/" + escape_token(k); }

    void get(const char* k, std::string& out)
    {
        if (!has(k))
            return;
        const auto& v = at(k);
        if (!v.is_string())
            throw SchemaError(where(k), "expected a string");
        out = v.get<std::string>();
    }
    void get(const char* k, bool& out)
    {
        if (!has(k))
            return;
        const auto& v = at(k);
        if (!v.is_boolean())
            throw SchemaError(where(k), "expected a boolean");
        out = v.get<bool>();
    }
    void get(const char* k, double& out)
    {
        if (!has(k))
            return;
        const auto& v = at(k);
        if (!v.is_number())
            throw SchemaError(where(k), "expected a number");
        out = v.get<double>();
    }
    template <class Int>
    void get_int(const char* k, Int& out, long long lo, long long hi)
    {
        if (!has(k))
            return;
        const auto& v = at(k);
        if (!v.is_number_integer())
            throw SchemaError(where(k), "expected an integer");
        if (v.is_number_unsigned() && v.get<unsigned long long>() > static_cast<unsigned long long>(hi))
            throw SchemaError(where(k), "out of range");
        const auto x = v.get<long long>();
        if (x < lo || x > hi)
            throw SchemaError(where(k), "expected an integer in [" + std::to_string(lo) + ", " +
                                            std::to_string(hi) + "]");
        out = static_cast<Int>(x);
    }
    std::vector<std::int64_t> int_list(const char* k, std::size_t min_len, long long lo)
    {
        const auto& v = at(k);
        if (v.is_number_integer())
            return {v.get<std::int64_t>()};
        if (!v.is_array() || v.size() < min_len)
            throw SchemaError(where(k), "expected an integer or a list of integers");
        std::vector<std::int64_t> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number_integer() || v[i].get<long long>() < lo)
                throw SchemaError(where(k) + "/" + std::to_string(i),
                                  "expected an integer >= " + std::to_string(lo));
            out.push_back(v[i].get<std::int64_t>());
        }
        return out;
    }
    void finish() const
    {
        for (const auto& [k, v] : j_.items())
            if (!seen_.count(k))
                throw SchemaError(ptr_ + "/" + escape_token(k), "unknown key");
    }

private:
    const Json& j_;
    std::string ptr_;
    mutable std::set<std::string> seen_;
};

void check_spec_name(const GroupModel& g, const std::string& name, const std::string& where)
{
    try {
        (void)builtin_spec(g, name);
    } catch (const Error& e) {
        throw SchemaError(where, e.what());
    }
}

} // namespace

GroupModel parse_group(const std::string& s)
{
    const auto count = [&](const std::string& body) {
        std::size_t pos = 0;
        const long long v = std::stoll(body, &pos);
        if (pos != body.size() || v < 1)
            throw PreconditionError("bad group descriptor '" + s + "'");
        return v;
    };
    try {
        if (s == "heisenberg3")
            return GroupModel::heisenberg3();
        if (s.rfind("zd:", 0) == 0)
            return GroupModel::zd(static_cast<int>(count(s.substr(3))));
        if (s.rfind("torus:", 0) == 0) {
            std::vector<std::int64_t> m;
            std::stringstream in(s.substr(6));
            std::string part;
            while (std::getline(in, part, 'x'))
                m.push_back(count(part));
            return GroupModel::torus(m);
        }
    } catch (const std::logic_error&) {
    }
    throw PreconditionError("bad group descriptor '" + s + "' (expected zd:<d>, torus:<m1>x<m2>, heisenberg3)");
}

GroupModel build_group(const ProjectConfig& c)
{
    if (c.group == "finite-table")
        return GroupModel::finite_table(c.group_table);
    return parse_group(c.group);
}

namespace {

// Object form: {"kind": "Zd", "d": 2}, {"kind": "Torus", "moduli": [m1, m2]},
// {"kind": "Heisenberg3"}, {"kind": "FiniteTable", "table": [[...], ...]}.
void read_group_object(const Json& j, ProjectConfig& c)
{
    Reader r(j, "/group");
    std::string kind;
    r.get("kind", kind);
    if (kind == "Zd") {
        int d = 2;
        r.get_int("d", d, 1, 4);
        c.group = "zd:" + std::to_string(d);
    } else if (kind == "Torus") {
        if (!r.has("moduli"))
            throw SchemaError("/group/moduli", "required");
        std::string desc;
        for (auto m : r.int_list("moduli", 1, 1))
            desc += (desc.empty() ? "" : "x") + std::to_string(m);
        c.group = "torus:" + desc;
    } else if (kind == "Heisenberg3") {
        c.group = "heisenberg3";
    } else if (kind == "FiniteTable") {
        if (!r.has("table"))
            throw SchemaError("/group/table", "required");
        const auto& t = r.at("table");
        if (!t.is_array() || t.empty())
            throw SchemaError("/group/table", "expected a nonempty square table");
        for (std::size_t i = 0; i < t.size(); ++i) {
            const auto p = "/group/table/" + std::to_string(i);
            if (!t[i].is_array())
                throw SchemaError(p, "expected a row of integers");
            std::vector<int> row;
            for (std::size_t k = 0; k < t[i].size(); ++k) {
                if (!t[i][k].is_number_integer())
                    throw SchemaError(p + "/" + std::to_string(k), "expected an integer");
                row.push_back(t[i][k].get<int>());
            }
            c.group_table.push_back(std::move(row));
        }
        c.group = "finite-table";
    } else {
        throw SchemaError("/group/kind", "expected Zd, Torus, Heisenberg3 or FiniteTable");
    }
    r.finish();
}

Json group_json(const ProjectConfig& c)
{
    if (c.group == "finite-table")
        return {{"kind", "FiniteTable"}, {"table", c.group_table}};
    if (c.group == "heisenberg3")
        return {{"kind", "Heisenberg3"}};
    const auto g = parse_group(c.group);
    if (g.kind() == GroupKind::Torus)
        return {{"kind", "Torus"}, {"moduli", g.moduli()}};
    return {{"kind", "Zd"}, {"d", g.rank()}};
}

} // namespace

ProjectConfig parse_config(const std::string& text)
{
    PathTracker tracker;
    if (!Json::sax_parse(text, &tracker))
        throw SchemaError(tracker.pointer(), "malformed JSON: " + tracker.error);
    const Json j = Json::parse(text);

    ProjectConfig c;
    Reader r(j, "");
    if (r.has("group") && r.at("group").is_object())
        read_group_object(r.at("group"), c);
    else
        r.get("group", c.group);
    GroupModel g = GroupModel::zd(2);
    try {
        g = build_group(c);
    } catch (const Error& e) {
        throw SchemaError("/group", e.what());
    }
    if (r.has("generators")) {
        const auto& v = r.at("generators");
        if (v.is_string()) {
            if (v.get<std::string>() != "standard")
                throw SchemaError("/generators", "expected \"standard\" or a list of coordinate lists");
        } else if (v.is_array()) {
            for (std::size_t i = 0; i < v.size(); ++i) {
                const auto p = "/generators/" + std::to_string(i);
                if (!v[i].is_array())
                    throw SchemaError(p, "expected a coordinate list");
                std::vector<std::int64_t> e;
                for (std::size_t t = 0; t < v[i].size(); ++t) {
                    if (!v[i][t].is_number_integer())
                        throw SchemaError(p + "/" + std::to_string(t), "expected an integer");
                    e.push_back(v[i][t].get<std::int64_t>());
                }
                c.generators.push_back(e);
            }
            try {
                std::vector<Element> elems;
                for (const auto& e : c.generators)
                    elems.push_back(g.element(e));
                (void)GenSet::make(g, elems);
            } catch (const Error& e) {
                throw SchemaError("/generators", e.what());
            }
        } else {
            throw SchemaError("/generators", "expected \"standard\" or a list of coordinate lists");
        }
    }

    if (r.has("sample")) {
        Reader s(r.at("sample"), "/sample");
        s.get("kind", c.sample.kind);
        if (c.sample.kind != "rotation2d" && c.sample.kind != "random")
            throw SchemaError("/sample/kind", "expected rotation2d or random");
        s.get("alpha", c.sample.alpha);
        s.get("beta", c.sample.beta);
        s.get_int("alphabet", c.sample.alphabet, 1, 255);
        if (s.has("window"))
            c.sample.window = s.int_list("window", 1, 1);
        if (s.has("origin"))
            c.sample.origin = s.int_list("origin", 1, std::numeric_limits<long long>::min());
        if (s.has("ball")) {
            int b = 0;
            s.get_int("ball", b, 0, 1 << 20);
            c.sample.ball = b;
        }
        s.finish();
    }

    r.get("target", c.target);
    check_spec_name(g, c.target, "/target");

    if (r.has("hom")) {
        Reader h(r.at("hom"), "/hom");
        std::string mode = "demo";
        h.get("mode", mode);
        if (mode == "demo")
            c.mode = HomMode::Demo;
        else if (mode == "theorem")
            c.mode = HomMode::Theorem;
        else
            throw SchemaError("/hom/mode", "expected demo or theorem");
        h.get_int("n0", c.n0, 1, 100000);
        if (h.has("m0")) {
            int m = 0;
            h.get_int("m0", m, 1, 100000);
            c.m0 = m;
        }
        if (h.has("r_sep")) {
            int rs = 0;
            h.get_int("r_sep", rs, 0, 100000);
            c.r_sep = rs;
        }
        h.finish();
    }

    if (r.has("checks")) {
        Reader k(r.at("checks"), "/checks");
        k.get_int("fep_radius", c.checks.fep_radius, 0, 64);
        k.get_int("si_radius", c.checks.si_radius, 0, 64);
        k.get_int("extender_pairs", c.checks.extender_pairs, 0, 1000000);
        k.get_int("extender_window", c.checks.extender_window, 3, 64);
        k.finish();
    }

    if (r.has("entropy")) {
        Reader e(r.at("entropy"), "/entropy");
        e.get("spec", c.entropy.spec);
        e.get("method", c.entropy.method);
        try {
            (void)parse_entropy_method(c.entropy.method);
        } catch (const Error& ex) {
            throw SchemaError("/entropy/method", ex.what());
        }
        e.get_int("width", c.entropy.width, 0, 64);
        if (e.has("shape")) {
            std::string sh;
            e.get("shape", sh);
            if (sh != "ball" && sh != "box" && sh != "strip")
                throw SchemaError("/entropy/shape", "expected ball, box or strip");
            c.entropy.shape = sh;
        }
        e.finish();
    }

    if (r.has("output")) {
        Reader o(r.at("output"), "/output");
        o.get("dir", c.output.dir);
        o.get("svg", c.output.svg);
        o.get("pgm", c.output.pgm);
        o.finish();
    }

    if (r.has("caps")) {
        Reader k(r.at("caps"), "/caps");
        k.get_int("max_ball", c.caps.max_ball, 1, std::numeric_limits<long long>::max());
        k.get_int("max_cells", c.caps.max_cells, 1, std::numeric_limits<long long>::max());
        k.get_int("max_enumeration", c.caps.max_enumeration, 1, std::numeric_limits<long long>::max());
        if (k.has("wall_clock_s")) {
            double w = 0;
            k.get("wall_clock_s", w);
            if (!(w > 0))
                throw SchemaError("/caps/wall_clock_s", "expected a positive number");
            c.caps.wall_clock_s = w;
        }
        k.finish();
    }

    r.get_int("seed", c.seed, 0, std::numeric_limits<long long>::max());
    r.get_int("threads", c.threads, 1, 1024);
    r.finish();
    return c;
}

ProjectConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw SchemaError("", "cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

Json to_json(const ProjectConfig& c)
{
    Json j;
    j["group"] = group_json(c);
    if (c.generators.empty())
        j["generators"] = "standard";
    else
        j["generators"] = c.generators;
    Json s;
    s["kind"] = c.sample.kind;
    if (c.sample.kind == "rotation2d") {
        s["alpha"] = c.sample.alpha;
        s["beta"] = c.sample.beta;
    } else {
        s["alphabet"] = c.sample.alphabet;
    }
    if (c.sample.ball) {
        s["ball"] = *c.sample.ball;
    } else {
        s["window"] = c.sample.window;
        s["origin"] = c.sample.origin;
    }
    j["sample"] = s;
    j["target"] = c.target;
    Json h;
    h["mode"] = to_string(c.mode);
    h["n0"] = c.n0;
    h["m0"] = c.m0 ? Json(*c.m0) : Json(nullptr);
    h["r_sep"] = c.r_sep ? Json(*c.r_sep) : Json(nullptr);
    j["hom"] = h;
    j["checks"] = {{"fep_radius", c.checks.fep_radius},
                   {"si_radius", c.checks.si_radius},
                   {"extender_pairs", c.checks.extender_pairs},
                   {"extender_window", c.checks.extender_window}};
    j["seed"] = c.seed;
    return j;
}

} // namespace gshift::cli
