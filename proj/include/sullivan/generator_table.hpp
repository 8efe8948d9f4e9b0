#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "sullivan/errors.hpp"

namespace sullivan {

using GenId = std::uint32_t;

struct Generator {
    std::string name;
    int degree = 0;
    bool odd() const { return degree % 2 != 0; }
};

inline bool valid_generator_name(std::string_view name) {
    if (name.empty()) return false;
    auto head = name.front();
    if (!(std::isalpha(static_cast<unsigned char>(head)) || head == '_'))
        return false;
    for (char c : name)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''))
            return false;
    return true;
}

// Ordered list of generators; ids are dense 0..m-1 in declaration order.
class GeneratorTable {
public:
    GenId add(std::string name, int degree) {
        if (degree <= 0)
            throw StructuralError("generator '" + name +
                                  "' has degree " + std::to_string(degree) +
                                  "; degrees must be >= 1");
        if (!valid_generator_name(name))
            throw StructuralError("bad generator name '" + name + "'");
        if (index_.count(name))
            throw StructuralError("duplicate generator name '" + name + "'");
        GenId id = static_cast<GenId>(gens_.size());
        index_.emplace(name, id);
        gens_.push_back(Generator{std::move(name), degree});
        return id;
    }

    std::size_t size() const { return gens_.size(); }
    const Generator& gen(GenId id) const { return gens_.at(id); }
    int degree(GenId id) const { return gens_.at(id).degree; }
    bool odd(GenId id) const { return gens_.at(id).odd(); }
    const std::string& name(GenId id) const { return gens_.at(id).name; }
    const std::vector<Generator>& generators() const { return gens_; }

    GenId id_of(std::string_view name) const {
        auto it = index_.find(std::string(name));
        if (it == index_.end())
            throw StructuralError("unknown generator '" + std::string(name) + "'");
        return it->second;
    }
    bool has(std::string_view name) const {
        return index_.count(std::string(name)) != 0;
    }

    bool same_contents(const GeneratorTable& other) const {
        if (gens_.size() != other.gens_.size()) return false;
        for (std::size_t i = 0; i < gens_.size(); ++i)
            if (gens_[i].name != other.gens_[i].name ||
                gens_[i].degree != other.gens_[i].degree)
                return false;
        return true;
    }

private:
    std::vector<Generator> gens_;
    std::map<std::string, GenId> index_;
};

using TablePtr = std::shared_ptr<const GeneratorTable>;

inline TablePtr make_table(std::initializer_list<std::pair<std::string, int>> gens) {
    auto t = std::make_shared<GeneratorTable>();
    for (const auto& [name, deg] : gens) t->add(name, deg);
    return t;
}

// Tables are compatible when they are the same object or structurally equal.
inline bool compatible(const TablePtr& a, const TablePtr& b) {
    if (!a || !b) return true;
    return a == b || a->same_contents(*b);
}

} // namespace sullivan
