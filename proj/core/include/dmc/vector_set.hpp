#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

namespace dmc {

std::uint64_t hash_words(const std::uint64_t* v, std::size_t width);

// Open-addressing set of fixed-width word arrays. Not thread-safe.
class VectorSet {
public:
    explicit VectorSet(std::size_t width);

    // True when v was not present before.
    bool insert(const std::uint64_t* v) { return insert_hashed(v, hash_words(v, width_)); }
    bool insert_hashed(const std::uint64_t* v, std::uint64_t hash);
    bool contains(const std::uint64_t* v) const;
    std::size_t size() const { return size_; }
    std::size_t width() const { return width_; }
    void clear();

    template <class F>
    void for_each(F&& fn) const {
        for (std::size_t s = 0; s < tags_.size(); ++s)
            if (tags_[s]) fn(keys_.data() + s * width_);
    }

private:
    void grow();

    std::size_t width_;
    std::size_t size_ = 0;
    std::vector<std::uint32_t> tags_;  // 0 = empty
    std::vector<std::uint64_t> keys_;
};

// Shards keyed by hash; each shard has its own lock. The element budget is global.
class ShardedVectorSet {
public:
    ShardedVectorSet(std::size_t width, std::uint64_t budget, bool locking);

    // Throws BudgetExceeded when a new element would exceed the budget.
    bool insert(const std::uint64_t* v);
    std::uint64_t size() const { return count_.load(); }
    std::size_t width() const { return width_; }

    template <class F>
    void for_each(F&& fn) const {
        for (const auto& s : shards_) s->set.for_each(fn);
    }

private:
    struct Shard {
        explicit Shard(std::size_t w) : set(w) {}
        std::mutex lock;
        VectorSet set;
    };
    std::size_t width_;
    std::uint64_t budget_;
    bool locking_;
    std::atomic<std::uint64_t> count_{0};
    std::vector<std::unique_ptr<Shard>> shards_;
};

}  // namespace dmc
