#include <isci/formula.hpp>

#include <algorithm>
#include <array>
#include <deque>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace isci {

namespace {

struct Node {
    FormulaKind kind;
    std::uint32_t lhs;
    std::uint32_t rhs;
    unsigned complexity;
    const std::string * name;
};

struct Key {
    FormulaKind kind;
    std::uint32_t lhs, rhs;
    bool operator==(const Key &) const = default;
};

struct KeyHash {
    std::size_t operator()(const Key & k) const noexcept
    {
        std::uint64_t x = (std::uint64_t{k.lhs} << 32) ^ k.rhs ^ (std::uint64_t(k.kind) << 61);
        x = (x ^ (x >> 33)) * 0xff51afd7ed558ccdULL;
        x = (x ^ (x >> 33)) * 0xc4ceb9fe1a85ec53ULL;
        return static_cast<std::size_t>(x ^ (x >> 33));
    }
};

constexpr std::size_t chunk_bits = 16;
constexpr std::size_t chunk_size = std::size_t{1} << chunk_bits;
constexpr std::size_t max_chunks = 4096;

// Nodes live in fixed-size chunks so that reads never race with growth.
class Arena {
public:
    Arena() { intern(Key{FormulaKind::Bottom, 0, 0}, nullptr); }

    const Node & at(std::uint32_t i) const { return _chunks[i >> chunk_bits][i & (chunk_size - 1)]; }

    std::uint32_t variable(std::string_view name)
    {
        std::lock_guard lock(_mutex);
        auto it = _names.find(std::string(name));
        std::uint32_t name_id;
        if (it == _names.end()) {
            name_id = static_cast<std::uint32_t>(_name_storage.size());
            _name_storage.emplace_back(name);
            _names.emplace(_name_storage.back(), name_id);
        }
        else
            name_id = it->second;
        return intern_locked(Key{FormulaKind::Var, name_id, 0}, &_name_storage[name_id]);
    }

    std::uint32_t composite(FormulaKind kind, std::uint32_t lhs, std::uint32_t rhs)
    {
        std::lock_guard lock(_mutex);
        return intern_locked(Key{kind, lhs, rhs}, nullptr);
    }

    std::optional<std::uint32_t> find(FormulaKind kind, std::uint32_t lhs, std::uint32_t rhs)
    {
        std::lock_guard lock(_mutex);
        auto it = _index.find(Key{kind, lhs, rhs});
        if (it == _index.end())
            return std::nullopt;
        return it->second;
    }

    std::size_t size()
    {
        std::lock_guard lock(_mutex);
        return _count;
    }

private:
    std::uint32_t intern(Key key, const std::string * name)
    {
        std::lock_guard lock(_mutex);
        return intern_locked(key, name);
    }

    std::uint32_t intern_locked(Key key, const std::string * name)
    {
        auto it = _index.find(key);
        if (it != _index.end())
            return it->second;
        if (_count == max_chunks * chunk_size)
            throw std::length_error("formula arena exhausted");
        std::size_t chunk = _count >> chunk_bits;
        if (! _chunks[chunk])
            _chunks[chunk] = std::make_unique<Node[]>(chunk_size);
        unsigned c = 0;
        if (key.kind == FormulaKind::Imp || key.kind == FormulaKind::Id)
            c = at(key.lhs).complexity + at(key.rhs).complexity + 1;
        auto id = static_cast<std::uint32_t>(_count);
        _chunks[chunk][_count & (chunk_size - 1)] = Node{key.kind, key.lhs, key.rhs, c, name};
        ++_count;
        _index.emplace(key, id);
        return id;
    }

    std::mutex _mutex;
    std::array<std::unique_ptr<Node[]>, max_chunks> _chunks;
    std::size_t _count = 0;
    std::unordered_map<Key, std::uint32_t, KeyHash> _index;
    std::deque<std::string> _name_storage;
    std::unordered_map<std::string, std::uint32_t> _names;
};

Arena & arena()
{
    static Arena instance;
    return instance;
}

} // namespace

Formula::Formula() : _index(0) {}

Formula Formula::bottom() { return Formula(0); }

Formula Formula::var(std::string_view name) { return Formula(arena().variable(name)); }

Formula Formula::imp(Formula lhs, Formula rhs) { return make(FormulaKind::Imp, lhs, rhs); }

Formula Formula::eq(Formula lhs, Formula rhs) { return make(FormulaKind::Id, lhs, rhs); }

Formula Formula::make(FormulaKind kind, Formula lhs, Formula rhs)
{
    if (kind != FormulaKind::Imp && kind != FormulaKind::Id)
        throw std::invalid_argument("Formula::make expects a binary connective");
    return Formula(arena().composite(kind, lhs._index, rhs._index));
}

std::optional<Formula> Formula::find(FormulaKind kind, Formula lhs, Formula rhs)
{
    auto i = arena().find(kind, lhs._index, rhs._index);
    if (! i)
        return std::nullopt;
    return Formula(*i);
}

FormulaKind Formula::kind() const { return arena().at(_index).kind; }

const std::string & Formula::name() const
{
    const Node & n = arena().at(_index);
    if (n.kind != FormulaKind::Var)
        throw std::logic_error("name() on a non-variable");
    return *n.name;
}

Formula Formula::left() const
{
    const Node & n = arena().at(_index);
    if (n.kind != FormulaKind::Imp && n.kind != FormulaKind::Id)
        throw std::logic_error("left() on an atom");
    return Formula(n.lhs);
}

Formula Formula::right() const
{
    const Node & n = arena().at(_index);
    if (n.kind != FormulaKind::Imp && n.kind != FormulaKind::Id)
        throw std::logic_error("right() on an atom");
    return Formula(n.rhs);
}

unsigned Formula::complexity() const { return arena().at(_index).complexity; }

std::strong_ordering canonical_compare(Formula a, Formula b)
{
    if (a == b)
        return std::strong_ordering::equal;
    if (auto k = a.kind() <=> b.kind(); k != 0)
        return k;
    switch (a.kind()) {
    case FormulaKind::Bottom:
        return std::strong_ordering::equal;
    case FormulaKind::Var:
        return a.name().compare(b.name()) <=> 0;
    default:
        if (auto l = canonical_compare(a.left(), b.left()); l != 0)
            return l;
        return canonical_compare(a.right(), b.right());
    }
}

FormulaClass classify(Formula f)
{
    switch (f.kind()) {
    case FormulaKind::Bottom: return FormulaClass::Bottom;
    case FormulaKind::Var: return FormulaClass::Prop;
    case FormulaKind::Imp: return FormulaClass::Implication;
    case FormulaKind::Id: return FormulaClass::Equation;
    }
    return FormulaClass::Bottom;
}

FormulaSet::FormulaSet(std::initializer_list<Formula> items) : FormulaSet(std::vector<Formula>(items)) {}

FormulaSet::FormulaSet(std::vector<Formula> items) : _items(std::move(items))
{
    std::sort(_items.begin(), _items.end());
    _items.erase(std::unique(_items.begin(), _items.end()), _items.end());
}

FormulaSet FormulaSet::from_sorted(std::vector<Formula> items)
{
    FormulaSet s;
    s._items = std::move(items);
    return s;
}

bool FormulaSet::contains(Formula f) const { return std::binary_search(_items.begin(), _items.end(), f); }

bool FormulaSet::insert(Formula f)
{
    auto it = std::lower_bound(_items.begin(), _items.end(), f);
    if (it != _items.end() && *it == f)
        return false;
    _items.insert(it, f);
    return true;
}

bool FormulaSet::erase(Formula f)
{
    auto it = std::lower_bound(_items.begin(), _items.end(), f);
    if (it == _items.end() || *it != f)
        return false;
    _items.erase(it);
    return true;
}

bool FormulaSet::includes(const FormulaSet & other) const
{
    return std::includes(_items.begin(), _items.end(), other._items.begin(), other._items.end());
}

std::strong_ordering operator<=>(const FormulaSet & a, const FormulaSet & b)
{
    return std::lexicographical_compare_three_way(a._items.begin(), a._items.end(), b._items.begin(), b._items.end());
}

FormulaSet subformulas(Formula f)
{
    std::vector<Formula> out;
    std::vector<Formula> stack{f};
    while (! stack.empty()) {
        Formula g = stack.back();
        stack.pop_back();
        out.push_back(g);
        if (g.is_composite()) {
            stack.push_back(g.left());
            stack.push_back(g.right());
        }
    }
    return FormulaSet(std::move(out));
}

FormulaSet variables(Formula f)
{
    std::vector<Formula> out;
    for (Formula g : subformulas(f))
        if (g.is_var())
            out.push_back(g);
    return FormulaSet::from_sorted(std::move(out));
}

std::size_t arena_capacity() { return max_chunks * chunk_size; }

std::size_t arena_size() { return arena().size(); }

} // namespace isci
