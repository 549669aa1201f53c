#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>

#include "json.hpp"
#include "resolution.hpp"

namespace sdclab {

// On-disk resolution records: <dir>/<key>.json, key = digest of (algebra, complex, bound).
// Records are written once (temp file + rename) and never modified.
inline constexpr int kCacheFormat = 1;

inline Digest resolution_key(const Digest& alg, const Digest& cx, int bound) {
    return Hasher().str("resolution").i64(kCacheFormat).digest(alg).digest(cx).i64(bound).done();
}

template <class F>
nlohmann::json svec_to_json(const F& f, const SVec<F>& v) {
    auto a = nlohmann::json::array();
    for (const auto& [i, x] : v) a.push_back({i, f.to_string(x)});
    return a;
}

template <class F>
SVec<F> svec_from_json(const F& f, const nlohmann::json& a) {
    SVec<F> v;
    for (const auto& e : a) {
        int i = e.at(0).get<int>();
        if (!v.empty() && v.back().first >= i) throw std::runtime_error("unsorted vector");
        auto x = f.from_rational(parse_rational(e.at(1).get<std::string>()));
        if (f.is_zero(x)) throw std::runtime_error("stored zero");
        v.emplace_back(i, x);
    }
    return v;
}

template <class F>
nlohmann::json resolution_record(const Resolution<F>& r, const Digest& key, const Digest& cx, int bound) {
    const F& f = r.alg->field;
    nlohmann::json j;
    j["format"] = kCacheFormat;
    j["key"] = key.hex();
    j["algebra"] = r.alg->digest.hex();
    j["complex"] = cx.hex();
    j["bound"] = bound;
    j["field"] = f.spec().name();
    // Only degrees up to the bound, so the record does not depend on earlier requests.
    const size_t keep = std::min(r.betti.size(), static_cast<size_t>(std::max(0, bound - r.start + 1)));
    j["start"] = r.start;
    j["terminated"] = r.terminated && keep == r.betti.size();
    j["betti"] = std::vector<int>(r.betti.begin(), r.betti.begin() + keep);
    auto d = nlohmann::json::array(), e = nlohmann::json::array();
    for (size_t n = 0; n < keep; ++n) {
        auto dn = nlohmann::json::array(), en = nlohmann::json::array();
        for (const auto& v : r.dimg[n]) dn.push_back(svec_to_json(f, v));
        for (const auto& v : r.eimg[n]) en.push_back(svec_to_json(f, v));
        d.push_back(std::move(dn));
        e.push_back(std::move(en));
    }
    j["d"] = std::move(d);
    j["e"] = std::move(e);
    return j;
}

inline std::filesystem::path record_path(const std::filesystem::path& dir, const Digest& key) {
    return dir / (key.hex() + ".json");
}

inline bool read_json_file(const std::filesystem::path& p, nlohmann::json& out) {
    std::ifstream in(p);
    if (!in) return false;
    try {
        in >> out;
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

// Loads a record for x; returns nullptr when absent or unusable.
template <class F>
std::shared_ptr<Resolution<F>> load_resolution(const std::filesystem::path& dir, const Digest& key, CPtr<F> x,
                                               const Digest& cx) {
    nlohmann::json j;
    auto p = record_path(dir, key);
    if (!std::filesystem::exists(p) || !read_json_file(p, j)) return nullptr;
    try {
        const F& f = x->alg->field;
        if (j.at("format").get<int>() != kCacheFormat || j.at("key").get<std::string>() != key.hex() ||
            j.at("complex").get<std::string>() != cx.hex() || j.at("field").get<std::string>() != f.spec().name())
            return nullptr;
        auto r = std::make_shared<Resolution<F>>(x);
        if (j.at("start").get<int>() != r->start) return nullptr;
        r->terminated = j.at("terminated").get<bool>();
        r->betti = j.at("betti").get<std::vector<int>>();
        const auto& d = j.at("d");
        const auto& e = j.at("e");
        if (d.size() != r->betti.size() || e.size() != r->betti.size()) return nullptr;
        for (size_t n = 0; n < r->betti.size(); ++n) {
            std::vector<SVec<F>> dn, en;
            for (const auto& v : d[n]) dn.push_back(svec_from_json(f, v));
            for (const auto& v : e[n]) en.push_back(svec_from_json(f, v));
            if (static_cast<int>(dn.size()) != r->betti[n] || static_cast<int>(en.size()) != r->betti[n]) return nullptr;
            r->dimg.push_back(std::move(dn));
            r->eimg.push_back(std::move(en));
        }
        return r;
    } catch (const std::exception&) {
        return nullptr;
    }
}

// Write-once store; an existing record is left untouched.
inline bool store_record(const std::filesystem::path& dir, const Digest& key, const nlohmann::json& rec) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    auto p = record_path(dir, key);
    if (std::filesystem::exists(p)) return false;
    auto tmp = dir / (key.hex() + ".json.tmp");
    {
        std::ofstream out(tmp);
        if (!out) return false;
        out << rec.dump();
        if (!out) return false;
    }
    std::filesystem::rename(tmp, p, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        return false;
    }
    return true;
}

struct GcReport {
    int kept = 0;
    std::vector<std::string> removed;
};

// Removes leftover temp files and records that do not parse or whose key does not match
// their file name or the current format.
inline GcReport cache_gc(const std::filesystem::path& dir) {
    GcReport rep;
    if (!std::filesystem::is_directory(dir)) return rep;
    std::vector<std::filesystem::path> files;
    for (const auto& ent : std::filesystem::directory_iterator(dir))
        if (ent.is_regular_file()) files.push_back(ent.path());
    std::sort(files.begin(), files.end());
    for (const auto& p : files) {
        const std::string name = p.filename().string();
        bool keep = false;
        if (p.extension() == ".json") {
            nlohmann::json j;
            if (read_json_file(p, j)) {
                try {
                    keep = j.at("format").get<int>() == kCacheFormat && j.at("key").get<std::string>() + ".json" == name &&
                           j.at("betti").is_array() && j.at("d").size() == j.at("betti").size() &&
                           j.at("e").size() == j.at("betti").size();
                } catch (const std::exception&) {
                    keep = false;
                }
            }
        }
        if (keep) {
            ++rep.kept;
        } else {
            std::error_code ec;
            std::filesystem::remove(p, ec);
            rep.removed.push_back(name);
        }
    }
    return rep;
}

}  // namespace sdclab
