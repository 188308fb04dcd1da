#include <isci/semantics.hpp>
#include <isci/syntax.hpp>

#include <stdexcept>
#include <unordered_set>

namespace isci {

Frame::Frame(std::size_t worlds) : _size(worlds), _leq(worlds * worlds, false)
{
    for (World w = 0; w < worlds; ++w)
        set(w, w);
}

Frame Frame::from_pairs(std::size_t worlds, const std::vector<std::pair<World, World>> & pairs)
{
    Frame f(worlds);
    for (World w = 0; w < worlds; ++w)
        f.set(w, w, false);
    for (auto [a, b] : pairs) {
        if (a >= worlds || b >= worlds)
            throw std::out_of_range("order pair mentions an unknown world");
        f.set(a, b);
    }
    return f;
}

void Frame::close()
{
    for (World w = 0; w < _size; ++w)
        set(w, w);
    for (World k = 0; k < _size; ++k)
        for (World i = 0; i < _size; ++i)
            if (leq(i, k))
                for (World j = 0; j < _size; ++j)
                    if (leq(k, j))
                        set(i, j);
}

std::vector<std::pair<World, World>> Frame::pairs() const
{
    std::vector<std::pair<World, World>> out;
    for (World a = 0; a < _size; ++a)
        for (World b = 0; b < _size; ++b)
            if (leq(a, b))
                out.emplace_back(a, b);
    return out;
}

std::vector<World> Frame::successors(World w) const
{
    std::vector<World> out;
    for (World b = 0; b < _size; ++b)
        if (leq(w, b))
            out.push_back(b);
    return out;
}

Assignment::Assignment(std::vector<Formula> base, std::size_t worlds) : _base(std::move(base)), _worlds(worlds)
{
    for (std::size_t i = 0; i < _base.size(); ++i) {
        Formula f = _base[i];
        if (! f.is_var() && ! f.is_eq())
            throw std::invalid_argument("assignment base holds variables and equations only");
        if (! _index.emplace(f, i).second)
            throw std::invalid_argument("duplicate formula in assignment base");
    }
    _values.assign(_base.size() * worlds, false);
}

void Assignment::set(Formula f, World w, bool value)
{
    auto it = _index.find(f);
    if (it == _index.end() || w >= _worlds)
        throw std::out_of_range("assignment entry outside base");
    _values[it->second * _worlds + w] = value;
}

std::optional<bool> Assignment::stored(Formula f, World w) const
{
    auto it = _index.find(f);
    if (it == _index.end())
        return std::nullopt;
    return _values[it->second * _worlds + w];
}

std::vector<Formula> Assignment::generators(World w) const
{
    std::vector<Formula> out;
    for (std::size_t i = 0; i < _base.size(); ++i)
        if (_base[i].is_eq() && ! _base[i].is_reflexive_eq() && _values[i * _worlds + w])
            out.push_back(_base[i]);
    return out;
}

namespace {

std::uint64_t signature_key(FormulaKind kind, std::uint32_t l, std::uint32_t r)
{
    return (std::uint64_t(kind) << 62) | (std::uint64_t(l) << 31) | r;
}

} // namespace

std::uint32_t Congruence::find(std::uint32_t x)
{
    while (_parent[x] != x) {
        _parent[x] = _parent[_parent[x]];
        x = _parent[x];
    }
    return x;
}

std::uint32_t Congruence::node(Formula f)
{
    if (auto it = _id.find(f); it != _id.end())
        return it->second;
    std::uint32_t l = 0, r = 0;
    if (f.is_composite()) {
        l = node(f.left());
        r = node(f.right());
    }
    auto id = static_cast<std::uint32_t>(_term.size());
    _id.emplace(f, id);
    _term.push_back(f);
    _parent.push_back(id);
    _uses.emplace_back();
    if (f.is_composite()) {
        auto key = signature_key(f.kind(), find(l), find(r));
        if (auto [it, fresh] = _signature.emplace(key, id); ! fresh)
            _pending.emplace_back(id, it->second);
        _uses[find(l)].push_back(id);
        if (find(r) != find(l))
            _uses[find(r)].push_back(id);
        propagate();
    }
    return id;
}

void Congruence::propagate()
{
    while (! _pending.empty()) {
        auto [a, b] = _pending.back();
        _pending.pop_back();
        std::uint32_t ra = find(a), rb = find(b);
        if (ra == rb)
            continue;
        if (_uses[ra].size() < _uses[rb].size())
            std::swap(ra, rb);
        _parent[rb] = ra;
        for (std::uint32_t u : _uses[rb]) {
            Formula t = _term[u];
            auto key = signature_key(t.kind(), find(_id.at(t.left())), find(_id.at(t.right())));
            if (auto [it, fresh] = _signature.emplace(key, u); ! fresh && find(it->second) != find(u))
                _pending.emplace_back(u, it->second);
        }
        auto moved = std::move(_uses[rb]);
        _uses[rb].clear();
        _uses[ra].insert(_uses[ra].end(), moved.begin(), moved.end());
    }
}

void Congruence::merge(Formula a, Formula b)
{
    std::uint32_t x = node(a), y = node(b);
    _pending.emplace_back(x, y);
    propagate();
}

bool Congruence::same(Formula a, Formula b)
{
    std::uint32_t x = node(a), y = node(b);
    return find(x) == find(y);
}

Forcing::Forcing(const KripkeModel & model) : _model(model), _memo(model.frame.size()), _congruence(model.frame.size()) {}

Congruence & Forcing::congruence(World w)
{
    auto & c = _congruence[w];
    if (! c) {
        c.emplace();
        for (Formula e : _model.valuation.generators(w))
            c->merge(e.left(), e.right());
    }
    return *c;
}

bool Forcing::value(World w, Formula f)
{
    if (f.is_var())
        return _model.valuation.stored(f, w).value_or(false);
    if (! f.is_eq())
        return false;
    auto & memo = _memo[w];
    if (auto it = memo.find(f); it != memo.end())
        return it->second;
    bool v = f.left() == f.right() || congruence(w).same(f.left(), f.right());
    memo.emplace(f, v);
    return v;
}

bool Forcing::forces(World w, Formula f)
{
    switch (f.kind()) {
    case FormulaKind::Bottom: return false;
    case FormulaKind::Var:
    case FormulaKind::Id: return value(w, f);
    case FormulaKind::Imp: break;
    }
    auto & memo = _memo[w];
    if (auto it = memo.find(f); it != memo.end())
        return it->second;
    bool v = true;
    const Frame & frame = _model.frame;
    for (World u = 0; u < frame.size() && v; ++u)
        if (frame.leq(w, u) && forces(u, f.left()) && ! forces(u, f.right()))
            v = false;
    _memo[w].emplace(f, v);
    return v;
}

bool forces(const KripkeModel & m, World w, Formula f) { return Forcing(m).forces(w, f); }

bool valid_in_model(const KripkeModel & m, Formula f)
{
    Forcing ev(m);
    for (World w = 0; w < m.frame.size(); ++w)
        if (! ev.forces(w, f))
            return false;
    return true;
}

namespace {

CheckReport failed(std::string message) { return CheckReport{false, std::move(message)}; }

std::string at(World w) { return " at world " + std::to_string(w); }

std::vector<Formula> with_generators(const KripkeModel & m, const std::vector<Formula> & formulas, bool variables)
{
    std::vector<Formula> out;
    std::unordered_set<Formula> seen;
    auto add = [&](Formula f) {
        if (seen.insert(f).second)
            out.push_back(f);
    };
    for (Formula f : formulas)
        add(f);
    for (Formula f : m.valuation.base())
        if ((variables && f.is_var()) || (f.is_eq() && ! f.is_reflexive_eq()))
            add(f);
    return out;
}

} // namespace

CheckReport check_frame(const Frame & f)
{
    for (World a = 0; a < f.size(); ++a) {
        if (! f.leq(a, a))
            return failed("order is not reflexive" + at(a));
        for (World b = 0; b < f.size(); ++b)
            if (f.leq(a, b))
                for (World c = 0; c < f.size(); ++c)
                    if (f.leq(b, c) && ! f.leq(a, c))
                        return failed("order is not transitive: " + std::to_string(a) + " <= " + std::to_string(b) + " <= " + std::to_string(c));
    }
    return {};
}

CheckReport check_admissible(const KripkeModel & m, const std::vector<Formula> & equations)
{
    Forcing ev(m);
    for (Formula e : m.valuation.base()) {
        if (! e.is_eq())
            continue;
        for (World w = 0; w < m.frame.size(); ++w) {
            if (m.valuation.stored(e, w) == ev.value(w, e))
                continue;
            if (e.is_reflexive_eq())
                return failed("reflexive equation " + print_formula(e) + " is false" + at(w));
            return failed("stored " + print_formula(e) + " is false though the stored true equations make it hold" + at(w));
        }
    }
    for (Formula e : equations)
        if (e.is_reflexive_eq())
            for (World w = 0; w < m.frame.size(); ++w)
                if (! ev.value(w, e))
                    return failed("reflexive equation " + print_formula(e) + " is false" + at(w));
    return {};
}

CheckReport check_monotonicity(const KripkeModel & m, const std::vector<Formula> & formulas)
{
    Forcing ev(m);
    for (Formula f : with_generators(m, formulas, true))
        for (World a = 0; a < m.frame.size(); ++a)
            if (ev.forces(a, f))
                for (World b = 0; b < m.frame.size(); ++b)
                    if (m.frame.leq(a, b) && ! ev.forces(b, f))
                        return failed(print_formula(f) + " holds" + at(a) + " but not at its successor " + std::to_string(b));
    return {};
}

CheckReport check_identity_entails_implications(const KripkeModel & m, const std::vector<Formula> & equations)
{
    Forcing ev(m);
    for (Formula e : with_generators(m, equations, false)) {
        if (! e.is_eq())
            continue;
        for (World w = 0; w < m.frame.size(); ++w)
            if (ev.value(w, e)
                && (! ev.forces(w, Formula::imp(e.left(), e.right())) || ! ev.forces(w, Formula::imp(e.right(), e.left()))))
                return failed(print_formula(e) + " holds" + at(w) + " without both implications");
    }
    return {};
}

CheckReport check_countermodel(const KripkeModel & m, World world, Formula phi)
{
    if (world >= m.frame.size())
        return failed("designated world does not exist");
    if (m.valuation.worlds() != m.frame.size())
        return failed("valuation and frame disagree on the number of worlds");
    if (auto r = check_frame(m.frame); ! r)
        return r;
    FormulaSet sub = subformulas(phi);
    std::vector<Formula> formulas(sub.begin(), sub.end()), equations;
    for (Formula f : sub)
        if (f.is_eq())
            equations.push_back(f);
    if (auto r = check_admissible(m, equations); ! r)
        return r;
    if (auto r = check_monotonicity(m, formulas); ! r)
        return r;
    if (auto r = check_identity_entails_implications(m, equations); ! r)
        return r;
    if (forces(m, world, phi))
        return failed(print_formula(phi) + " is forced" + at(world));
    return {};
}

} // namespace isci
