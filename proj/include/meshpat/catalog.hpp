#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "meshpat/bijection.hpp"
#include "meshpat/distribution.hpp"
#include "meshpat/mesh.hpp"

namespace meshpat {

enum class Status { Proved, Conjectured, Extended };

std::string to_string(Status s);

struct PairEntry {
    std::string id;
    int table = 0;
    Status status = Status::Proved;
    std::string technique;  // symmetry | swap | recurrence | single-swap | open
    MeshPattern q1;         // tau = 123
    MeshPattern q2;         // tau = 132, same shading
    std::optional<MapSpec> map;
    // Extra oracles: "closed_form_t", "wilf_t00", "reduction", "x4_recurrence".
    std::vector<std::string> checks;
    std::string note;
    // Generated entries only: the template and the inserted length-2 pattern.
    std::optional<ShadingType> template_type;
    std::optional<MeshPattern> p;
    int row = 0;

    bool has_check(const std::string& c) const;
};

class CatalogError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Catalog {
    std::vector<PairEntry> entries;
    // Generated entries versus distinct shadings among them.
    int extended_generated = 0;
    int extended_distinct = 0;

    const PairEntry* find(const std::string& id) const;
    std::vector<const PairEntry*> select(int table) const;
    int count(Status s) const;
};

// $MESHPAT_CATALOG_DIR when set, otherwise the data directory of the source tree.
std::string default_catalog_dir();

// Reads table2.json .. table8.json; Table 8 rows are expanded by instantiating
// each template with each listed length-2 pattern.
Catalog load_catalog(const std::string& dir = default_catalog_dir());

// Transcription linter; returns one line per problem found.
std::vector<std::string> lint_catalog(const Catalog& cat);

// The 1024 length-3 shadings that are minus antipodal.
std::vector<std::uint32_t> minus_antipodal_shadings();
MeshPattern pattern_from_bits(const Permutation& tau, std::uint32_t bits);

struct DiscoveryResult {
    int n_max = 0;
    int tested = 0;
    std::vector<std::uint32_t> passing;               // ascending bit order
    std::vector<std::vector<std::uint32_t>> orbits;   // passing shadings grouped by R ~ R^i
};

DiscoveryResult discover_candidates(int n_max, const SweepOptions& opts = {});

}  // namespace meshpat
