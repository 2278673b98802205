#pragma once

#include <openssl/evp.h>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "tensorsq/group_ops.hpp"
#include "tensorsq/record.hpp"

namespace tensorsq {

// Relabels g by breadth-first search from the identity over its greedy
// generating set, so equal constructions built in different element orders
// get the same table.
inline GroupTable canonical_relabel(GroupTable const& g) {
  std::vector<elem_t> gens = greedy_generators(g);
  std::sort(gens.begin(), gens.end(), [&](elem_t a, elem_t b) {
    return std::pair(g.elem_order(a), a) < std::pair(g.elem_order(b), b);
  });
  CayleyWords const cw = cayley_words(g, gens);
  std::vector<elem_t> pos(g.order());
  for (std::size_t i = 0; i < cw.bfs_order.size(); ++i) {
    pos[cw.bfs_order[i]] = static_cast<elem_t>(i);
  }
  std::size_t const n = g.order();
  std::vector<elem_t> mult(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      mult[i * n + j] = pos[g.mul(cw.bfs_order[i], cw.bfs_order[j])];
    }
  }
  return GroupTable(n, std::move(mult));
}

// Hex SHA-256 of the canonical table: order, then entries, as little-endian
// 32-bit words.
inline std::string table_hash(GroupTable const& g) {
  GroupTable const c = canonical_relabel(g);
  std::vector<unsigned char> bytes;
  auto put = [&](std::uint32_t v) {
    for (int k = 0; k < 4; ++k) {
      bytes.push_back(static_cast<unsigned char>(v >> (8 * k)));
    }
  };
  put(static_cast<std::uint32_t>(c.order()));
  for (elem_t v : c.flat()) {
    put(v);
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  }
  return hex.str();
}

// Computation records on disk, one JSON file per key. The spec string and
// timing are not part of the payload.
class RecordCache {
 public:
  explicit RecordCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::filesystem::path const& dir() const noexcept { return dir_; }

  std::optional<ComputationRecord> load(std::string const& key,
                                        std::string const& spec) const {
    std::ifstream in(path_for(key));
    if (!in) {
      return std::nullopt;
    }
    try {
      auto const j = nlohmann::ordered_json::parse(in);
      if (j.at("key") != key || j.at("engine_version") != kEngineVersion) {
        return std::nullopt;
      }
      auto payload = j.at("payload");
      payload["group"]["spec"] = spec;
      return record_from_json(payload);
    } catch (nlohmann::json::exception const&) {
      return std::nullopt;
    }
  }

  // Write to a temporary file in the same directory, then rename over the
  // final name.
  void store(std::string const& key, ComputationRecord r) const {
    std::filesystem::create_directories(dir_);
    r.spec.clear();
    r.elapsed_ms.reset();
    nlohmann::ordered_json j;
    j["key"] = key;
    j["engine_version"] = kEngineVersion;
    j["payload"] = to_json(r);
    std::random_device rd;
    auto const tmp = dir_ / (key + ".tmp" + std::to_string(rd()));
    {
      std::ofstream out(tmp);
      out << j.dump(2) << '\n';
      if (!out) {
        throw std::runtime_error("cannot write cache file " + tmp.string());
      }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path_for(key), ec);
    if (ec) {
      std::filesystem::remove(tmp, ec);
      throw std::runtime_error("cannot rename cache file into " + dir_.string());
    }
  }

 private:
  std::filesystem::path path_for(std::string const& key) const {
    return dir_ / (key + ".json");
  }

  std::filesystem::path dir_;
};

}  // namespace tensorsq
