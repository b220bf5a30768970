#pragma once

#include "gshift/entropy.hpp"
#include "gshift/hom.hpp"
#include "gshift/quasitiling.hpp"
#include "gshift/runtime.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gshift::cli {

using Json = nlohmann::ordered_json;

enum Exit : int { kOk = 0, kCheckFailed = 1, kSchemaError = 2, kResourceError = 3 };

// Config rejected; pointer is the JSON pointer of the offending key ("" for
// the document root).
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string pointer, const std::string& message);
    const std::string& pointer() const { return pointer_; }

private:
    std::string pointer_;
};

struct SampleConfig {
    std::string kind = "rotation2d"; // rotation2d | random
    double alpha = 0.41421356;
    double beta = 0.73205081;
    std::size_t alphabet = 2;
    // Box extents and origin; ignored on a torus, whose window is the whole group.
    std::vector<std::int64_t> window{256, 256};
    std::vector<std::int64_t> origin{0, 0};
    // Ball window B_r instead of a box.
    std::optional<int> ball;
};

struct ChecksConfig {
    int fep_radius = 2;
    int si_radius = 4;
    int extender_pairs = 100;
    int extender_window = 5;
};

struct EntropyConfig {
    std::string spec = "hardsquare-safe";
    std::string method = "transfer";
    int width = 8;
    std::optional<std::string> shape; // ball | box | strip
};

struct OutputConfig {
    std::string dir = "out";
    bool svg = true;
    bool pgm = true;
};

struct ProjectConfig {
    // Descriptor as accepted by parse_group, or "finite-table" with group_table set.
    std::string group = "zd:2";
    std::vector<std::vector<int>> group_table;
    // Empty means the standard generators.
    std::vector<std::vector<std::int64_t>> generators;
    SampleConfig sample;
    std::string target = "hardsquare-safe";
    HomMode mode = HomMode::Demo;
    int n0 = 6;
    std::optional<int> m0;
    std::optional<int> r_sep;
    ChecksConfig checks;
    EntropyConfig entropy;
    OutputConfig output;
    ResourceCaps caps;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

// Throws SchemaError. Unknown keys are rejected.
ProjectConfig parse_config(const std::string& text);
ProjectConfig load_config(const std::string& path);
Json to_json(const ProjectConfig& c);

// "zd:<d>", "torus:<m1>x<m2>...", "heisenberg3"
GroupModel parse_group(const std::string& s);
GroupModel build_group(const ProjectConfig& c);

// Whole CLI; returns the exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace gshift::cli
