#include <isci/semantics.hpp>

namespace isci {

namespace {

bool transitive(const Frame & f)
{
    for (World a = 0; a < f.size(); ++a)
        for (World b = 0; b < f.size(); ++b)
            if (f.leq(a, b))
                for (World c = 0; c < f.size(); ++c)
                    if (f.leq(b, c) && ! f.leq(a, c))
                        return false;
    return true;
}

// Value vectors list world 0 first; lexicographic order is numeric order
// with world 0 as the most significant bit.
std::vector<std::vector<bool>> up_sets(const Frame & f)
{
    std::size_t m = f.size();
    std::vector<std::vector<bool>> out;
    for (std::size_t code = 0; code < (std::size_t{1} << m); ++code) {
        std::vector<bool> v(m);
        for (World w = 0; w < m; ++w)
            v[w] = (code >> (m - 1 - w)) & 1;
        bool closed = true;
        for (World a = 0; a < m && closed; ++a)
            for (World b = 0; b < m && closed; ++b)
                if (v[a] && f.leq(a, b) && ! v[b])
                    closed = false;
        if (closed)
            out.push_back(std::move(v));
    }
    return out;
}

// Odometer step over assignments; the last atom varies fastest.
bool advance(std::vector<std::size_t> & choice, std::size_t radix)
{
    for (std::size_t a = choice.size(); a-- > 0;) {
        if (++choice[a] < radix)
            return true;
        choice[a] = 0;
    }
    return false;
}

} // namespace

std::optional<OracleHit> bounded_countermodel_search(Formula phi, std::size_t max_worlds, OracleStats * stats)
{
    OracleStats local;
    OracleStats & st = stats ? *stats : local;

    std::vector<Formula> atoms;
    for (Formula f : subformulas(phi))
        if (f.is_var() || (f.is_eq() && ! f.is_reflexive_eq()))
            atoms.push_back(f);

    for (std::size_t m = 1; m <= max_worlds; ++m) {
        std::vector<std::pair<World, World>> off;
        for (World a = 0; a < m; ++a)
            for (World b = 0; b < m; ++b)
                if (a != b)
                    off.emplace_back(a, b);
        const std::size_t bits = off.size();

        for (std::size_t mask = 0; mask < (std::size_t{1} << bits); ++mask) {
            Frame frame(m);
            for (std::size_t i = 0; i < bits; ++i)
                if ((mask >> (bits - 1 - i)) & 1)
                    frame.set(off[i].first, off[i].second);
            if (! transitive(frame))
                continue;
            ++st.frames;

            auto ups = up_sets(frame);
            KripkeModel model{frame, Assignment(atoms, m)};
            std::vector<std::size_t> choice(atoms.size(), 0);
            while (true) {
                for (std::size_t a = 0; a < atoms.size(); ++a)
                    for (World w = 0; w < m; ++w)
                        model.valuation.set(atoms[a], w, ups[choice[a]][w]);
                ++st.candidates;

                Forcing ev(model);
                std::optional<World> refuted;
                for (World w = 0; w < m && ! refuted; ++w)
                    if (! ev.forces(w, phi))
                        refuted = w;
                if (refuted) {
                    ++st.refuting_candidates;
                    if (check_countermodel(model, *refuted, phi))
                        return OracleHit{model, *refuted};
                }

                if (! advance(choice, ups.size()))
                    break;
            }
        }
    }
    return std::nullopt;
}

} // namespace isci
