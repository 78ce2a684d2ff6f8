#include "pelltri/records.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pelltri {

bool operator==(const CacheRecord& a, const CacheRecord& b) {
    return a.k == b.k && a.xf == b.xf && a.yf == b.yf && a.generalized == b.generalized &&
           a.r == b.r && a.rho == b.rho && a.kappa == b.kappa && a.gamma == b.gamma &&
           a.delta == b.delta && a.schema_version == b.schema_version;
}

CacheRecord compute_record(const Int& k) {
    RankData rd = rank_data(k);
    PellPair fund = simple_fundamental(k);
    GenFundamentalSet gens = generalized_fundamentals(k, Int(1 - k));

    CacheRecord rec;
    rec.k = k;
    rec.xf = fund.x;
    rec.yf = fund.y;
    rec.generalized = gens.fundamentals;
    std::sort(rec.generalized.begin(), rec.generalized.end());
    rec.r = rd.r;
    rec.rho = rd.rho;
    rec.kappa = rd.kappa;
    rec.gamma = rd.gamma;
    rec.delta = rd.delta;
    return rec;
}

namespace {

std::string pair_str(const GenPair& g) { return g.X.get_str() + ":" + g.Y.get_str(); }

GenPair pair_from_str(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos) throw std::runtime_error("bad X:Y pair: " + s);
    return {Int(s.substr(0, colon)), Int(s.substr(colon + 1))};
}

}  // namespace

nlohmann::ordered_json record_to_json(const CacheRecord& rec) {
    nlohmann::ordered_json j;
    j["schema_version"] = rec.schema_version;
    j["k"] = rec.k.get_str();
    j["xf"] = rec.xf.get_str();
    j["yf"] = rec.yf.get_str();
    nlohmann::ordered_json gen = nlohmann::ordered_json::array();
    for (const GenPair& g : rec.generalized) gen.push_back(pair_str(g));
    j["generalized"] = std::move(gen);
    j["r"] = std::to_string(rec.r);
    j["rho"] = std::to_string(rec.rho);
    j["kappa"] = rec.kappa.get_str();
    j["gamma"] = rec.gamma.get_str();
    j["delta"] = rec.delta.get_str();
    return j;
}

CacheRecord record_from_json(const nlohmann::ordered_json& j) {
    CacheRecord rec;
    rec.schema_version = j.at("schema_version").get<int>();
    rec.k = Int(j.at("k").get<std::string>());
    rec.xf = Int(j.at("xf").get<std::string>());
    rec.yf = Int(j.at("yf").get<std::string>());
    for (const auto& item : j.at("generalized")) {
        rec.generalized.push_back(pair_from_str(item.get<std::string>()));
    }
    rec.r = std::stoi(j.at("r").get<std::string>());
    rec.rho = static_cast<std::size_t>(std::stoul(j.at("rho").get<std::string>()));
    rec.kappa = Int(j.at("kappa").get<std::string>());
    rec.gamma = Int(j.at("gamma").get<std::string>());
    rec.delta = Int(j.at("delta").get<std::string>());
    return rec;
}

std::string csv_header() { return "k,r,rho,xf,yf,generalized,kappa,gamma,delta"; }

std::string record_to_csv(const CacheRecord& rec) {
    std::ostringstream os;
    os << rec.k.get_str() << "," << rec.r << "," << rec.rho << "," << rec.xf.get_str() << ","
       << rec.yf.get_str() << ",";
    for (std::size_t i = 0; i < rec.generalized.size(); ++i) {
        if (i) os << ";";
        os << pair_str(rec.generalized[i]);
    }
    os << "," << rec.kappa.get_str() << "," << rec.gamma.get_str() << ","
       << rec.delta.get_str();
    return os.str();
}

Cache::Cache(std::string path) : path_(std::move(path)) {
    std::ifstream in(path_);
    if (!in) return;  // missing cache file is an empty cache
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::ordered_json j = nlohmann::ordered_json::parse(line, nullptr, false);
        if (j.is_discarded()) continue;
        try {
            CacheRecord rec = record_from_json(j);
            if (rec.schema_version != kRecordSchemaVersion) continue;
            records_.emplace(rec.k, std::move(rec));
        } catch (const std::exception&) {
            continue;  // drop unreadable lines, they will be recomputed
        }
    }
}

std::optional<CacheRecord> Cache::lookup(const Int& k) const {
    auto it = records_.find(k);
    if (it == records_.end()) return std::nullopt;
    return it->second;
}

void Cache::insert(const CacheRecord& rec) {
    auto it = records_.find(rec.k);
    if (it != records_.end() && it->second == rec) return;
    records_[rec.k] = rec;
    dirty_ = true;
}

void Cache::save() const {
    namespace fs = std::filesystem;
    fs::path target(path_);
    fs::path dir = target.parent_path();
    if (!dir.empty()) {
        std::error_code ec;
        fs::create_directories(dir, ec);
    }
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cache: cannot write " + tmp.string());
        for (const auto& [k, rec] : records_) {
            out << record_to_json(rec).dump() << "\n";
        }
        out.flush();
        if (!out) throw std::runtime_error("cache: write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw std::runtime_error("cache: rename to " + path_ + " failed: " + ec.message());
}

}  // namespace pelltri
