#include "dmc/vector_set.hpp"

#include <algorithm>
#include <cstring>

#include "dmc/error.hpp"

namespace dmc {

namespace {

inline std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

constexpr std::size_t kShards = 64;

}  // namespace

std::uint64_t hash_words(const std::uint64_t* v, std::size_t width) {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ width;
    for (std::size_t i = 0; i < width; ++i) h = mix(h ^ v[i]) + i;
    return h;
}

VectorSet::VectorSet(std::size_t width) : width_(width) {
    tags_.assign(16, 0);
    keys_.assign(16 * width_, 0);
}

void VectorSet::clear() {
    size_ = 0;
    tags_.assign(16, 0);
    keys_.assign(16 * width_, 0);
}

bool VectorSet::insert_hashed(const std::uint64_t* v, std::uint64_t hash) {
    if (2 * (size_ + 1) > tags_.size()) grow();
    const std::uint32_t tag = static_cast<std::uint32_t>(hash >> 32) | 1U;
    const std::size_t mask = tags_.size() - 1;
    std::size_t s = static_cast<std::size_t>(hash) & mask;
    while (tags_[s]) {
        if (tags_[s] == tag && std::memcmp(keys_.data() + s * width_, v, width_ * 8) == 0)
            return false;
        s = (s + 1) & mask;
    }
    tags_[s] = tag;
    std::memcpy(keys_.data() + s * width_, v, width_ * 8);
    ++size_;
    return true;
}

bool VectorSet::contains(const std::uint64_t* v) const {
    const std::uint64_t hash = hash_words(v, width_);
    const std::uint32_t tag = static_cast<std::uint32_t>(hash >> 32) | 1U;
    const std::size_t mask = tags_.size() - 1;
    std::size_t s = static_cast<std::size_t>(hash) & mask;
    while (tags_[s]) {
        if (tags_[s] == tag && std::memcmp(keys_.data() + s * width_, v, width_ * 8) == 0)
            return true;
        s = (s + 1) & mask;
    }
    return false;
}

void VectorSet::grow() {
    std::vector<std::uint32_t> old_tags(tags_.size() * 2, 0);
    std::vector<std::uint64_t> old_keys(old_tags.size() * width_, 0);
    old_tags.swap(tags_);
    old_keys.swap(keys_);
    size_ = 0;
    for (std::size_t s = 0; s < old_tags.size(); ++s)
        if (old_tags[s]) {
            const std::uint64_t* v = old_keys.data() + s * width_;
            insert_hashed(v, hash_words(v, width_));
        }
}

ShardedVectorSet::ShardedVectorSet(std::size_t width, std::uint64_t budget, bool locking)
    : width_(width), budget_(budget), locking_(locking) {
    for (std::size_t i = 0; i < kShards; ++i) shards_.push_back(std::make_unique<Shard>(width));
}

bool ShardedVectorSet::insert(const std::uint64_t* v) {
    const std::uint64_t hash = hash_words(v, width_);
    Shard& shard = *shards_[(hash >> 58) % kShards];
    std::unique_lock<std::mutex> guard(shard.lock, std::defer_lock);
    if (locking_) guard.lock();
    if (shard.set.contains(v)) return false;
    if (count_.fetch_add(1) + 1 > budget_) {
        count_.fetch_sub(1);
        throw BudgetExceeded("distinct-vector budget of " + std::to_string(budget_) + " exceeded");
    }
    shard.set.insert_hashed(v, hash);
    return true;
}

}  // namespace dmc
