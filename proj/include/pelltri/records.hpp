#pragma once

// Per-k record of everything the CLI prints or caches, with byte-stable
// serialization: JSON (one object per line, integers as decimal strings so
// 10-digit fundamentals survive any parser) and CSV with the generalized
// set as a semicolon-joined X:Y list sorted by (Y, X).

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pelltri/pellcore.hpp"
#include "pelltri/trimult.hpp"

namespace pelltri {

inline constexpr int kRecordSchemaVersion = 1;

struct CacheRecord {
    Int k;
    Int xf, yf;
    std::vector<GenPair> generalized;  // full set, sorted by (Y, X)
    int r = 0;
    std::size_t rho = 0;
    Int kappa, gamma, delta;
    int schema_version = kRecordSchemaVersion;
};

bool operator==(const CacheRecord& a, const CacheRecord& b);

CacheRecord compute_record(const Int& k);

nlohmann::ordered_json record_to_json(const CacheRecord& rec);
CacheRecord record_from_json(const nlohmann::ordered_json& j);

std::string csv_header();
std::string record_to_csv(const CacheRecord& rec);

// JSON-lines cache, one record per k. Loads lazily, rewrites atomically
// (temp file + rename). Records with a foreign schema_version are dropped
// on load and recomputed.
class Cache {
  public:
    explicit Cache(std::string path);

    std::optional<CacheRecord> lookup(const Int& k) const;
    void insert(const CacheRecord& rec);
    bool dirty() const { return dirty_; }
    // Throws std::runtime_error on I/O failure.
    void save() const;

    const std::string& path() const { return path_; }

  private:
    std::string path_;
    std::map<Int, CacheRecord> records_;
    bool dirty_ = false;
};

}  // namespace pelltri
