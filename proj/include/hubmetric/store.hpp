// Copyright 2026 The hubmetric Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file store.hpp
 * @brief On-disk cache of solved density profiles.
 *
 * Layout under the root directory:
 *
 *   index.json                          key -> {profile, crc32, report}
 *   L<L>_U<U>_n<n>/Nup<a>_Ndn<b>.csv    density profile
 *   L<L>_U<U>_n<n>/Nup<a>_Ndn<b>.json   solver report
 *
 * Every file is written atomically; the index is rewritten after each
 * commit so an interrupted sweep leaves a consistent, resumable store.
 */

#pragma once

#include "hubmetric/density.hpp"
#include "hubmetric/error.hpp"
#include "hubmetric/io.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>

namespace hubmetric {

struct StoreKey {
    int L = 0;
    double U = 0.0;
    int n_up = 0;
    int n_down = 0;

    [[nodiscard]] double filling() const noexcept { return static_cast<double>(n_up + n_down) / L; }
};

[[nodiscard]] inline std::string context_dirname(int L, double U, double n) {
    return "L" + std::to_string(L) + "_U" + io::format_short(U) + "_n" + io::format_short(n);
}

/// "L<L>_U<U>_n<n>/Nup<a>_Ndn<b>"
[[nodiscard]] inline std::string key_string(const StoreKey& k) {
    return context_dirname(k.L, k.U, k.filling()) + "/Nup" + std::to_string(k.n_up) + "_Ndn" + std::to_string(k.n_down);
}

inline constexpr int kStoreVersion = 1;

class ResultsStore {
public:
    explicit ResultsStore(std::filesystem::path root) : root_(std::move(root)) {
        const auto idx = root_ / "index.json";
        if (std::filesystem::exists(idx)) {
            try {
                index_ = nlohmann::json::parse(io::read_file(idx));
            } catch (const nlohmann::json::exception& e) {
                throw IoError("corrupt store index '" + idx.string() + "': " + e.what());
            }
            if (!index_.contains("entries") || index_.value("version", 0) != kStoreVersion)
                throw IoError("store index '" + idx.string() + "' has an unsupported layout");
        } else {
            index_ = {{"version", kStoreVersion}, {"entries", nlohmann::json::object()}};
        }
    }

    [[nodiscard]] const std::filesystem::path& root() const noexcept { return root_; }

    [[nodiscard]] bool contains(const StoreKey& key) const {
        std::lock_guard lock(mutex_);
        return index_["entries"].contains(key_string(key));
    }

    /// Indexed, present on disk, and matching its checksum.
    [[nodiscard]] bool has_valid(const StoreKey& key) const {
        std::optional<nlohmann::json> entry = find(key);
        if (!entry) return false;
        const auto path = root_ / entry->at("profile").get<std::string>();
        if (!std::filesystem::exists(path)) return false;
        return io::crc32(io::read_file(path)) == entry->at("crc32").get<std::uint32_t>();
    }

    [[nodiscard]] std::optional<nlohmann::json> find(const StoreKey& key) const {
        std::lock_guard lock(mutex_);
        const auto& entries = index_["entries"];
        const auto it = entries.find(key_string(key));
        if (it == entries.end()) return std::nullopt;
        return nlohmann::json(*it);
    }

    /// Solver report stored with the profile.
    [[nodiscard]] nlohmann::json report(const StoreKey& key) const {
        auto e = find(key);
        if (!e) throw IoError("store has no entry for " + key_string(key));
        return e->at("report");
    }

    /// Persists profile and report, then commits the index entry.
    void save(const StoreKey& key, const DensityProfile& profile, const nlohmann::json& report) {
        const std::string base = key_string(key);
        const std::string csv = to_csv(profile);
        io::write_file_atomic(root_ / (base + ".csv"), csv);
        io::write_file_atomic(root_ / (base + ".json"), report.dump(2) + "\n");
        std::lock_guard lock(mutex_);
        index_["entries"][base] = {{"profile", base + ".csv"}, {"crc32", io::crc32(csv)}, {"report", report}};
        io::write_file_atomic(root_ / "index.json", index_.dump(2) + "\n");
    }

    /// Reads a stored profile, verifying its checksum.
    [[nodiscard]] DensityProfile load_profile(const StoreKey& key) const {
        auto entry = find(key);
        if (!entry) throw IoError("store has no entry for " + key_string(key));
        const auto path = root_ / entry->at("profile").get<std::string>();
        const std::string bytes = io::read_file(path);
        if (io::crc32(bytes) != entry->at("crc32").get<std::uint32_t>())
            throw ChecksumError("checksum mismatch for '" + path.string() + "'");
        return profile_from_csv(bytes);
    }

private:
    std::filesystem::path root_;
    nlohmann::json index_;
    mutable std::mutex mutex_;
};

}  // namespace hubmetric
