#include "ttab/tip.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <type_traits>

namespace ttab {
namespace {

constexpr int kD = TimeGrid::kDays;
constexpr int kT = TimeGrid::kPeriods;
constexpr int kS = kD * kT;

int slot_of(int d, int t) { return d * kT + (t - 1); }

template <class... P>
std::string tag(std::string base, const P&... parts) {
    base += '[';
    bool first = true;
    auto add = [&](const auto& p) {
        if (!first) base += ',';
        first = false;
        if constexpr (std::is_convertible_v<decltype(p), std::string>)
            base += p;
        else
            base += std::to_string(p);
    };
    (add(parts), ...);
    base += ']';
    return base;
}

// Same-labtie section pairs among one group's options, in id order.
struct TiePairs {
    std::vector<std::pair<int, int>> lecture_lab;  // (non-lab, lab)
    std::vector<std::pair<int, int>> unordered;    // s0 < s1
    std::vector<std::pair<int, int>> ordered;      // s0 != s1
};

TiePairs tie_pairs_for(const Instance& inst, const std::vector<int>& opts) {
    TiePairs tp;
    for (int a : opts) {
        const Section& sa = inst.sections[static_cast<size_t>(a)];
        if (!sa.labtie) continue;
        for (int b : opts) {
            if (a == b) continue;
            const Section& sb = inst.sections[static_cast<size_t>(b)];
            if (!sb.labtie || *sb.labtie != *sa.labtie) continue;
            tp.ordered.emplace_back(a, b);
            if (a < b) tp.unordered.emplace_back(a, b);
            if (!sa.is_lab && sb.is_lab) tp.lecture_lab.emplace_back(a, b);
        }
    }
    return tp;
}

double avail_cost(const Weights& w, const Professor& p, int avail) {
    double scale = avail == 0 ? 1.0 : avail == -1 ? 10.0 : 100.0;
    return w.c0 * scale * (p.is_adjunct ? w.adjunct_multiplier : 1.0);
}

// Everything build_tip and predicted_tip_size must agree on.
struct Shape {
    std::vector<std::vector<int>> crooms;         // per section
    std::vector<std::vector<int>> secs_of_prof;   // per professor
    std::vector<std::vector<std::string>> coprofs;  // per section, distinct sorted
    std::vector<std::pair<int, int>> options;     // W
    std::vector<std::vector<int>> opts_of_group;
    std::vector<std::vector<int>> groups_of_section;
    std::map<int, std::vector<int>> link_secs;
    std::set<std::string> fulltime;
    std::vector<int> avail_neg;                   // per professor: #slots with avail <= 0
};

Shape analyze(const Instance& inst) {
    Shape sh;
    sh.crooms.resize(inst.sections.size());
    for (size_t si = 0; si < inst.sections.size(); ++si)
        sh.crooms[si] = compatible_rooms(inst, static_cast<int>(si));
    sh.secs_of_prof.resize(inst.professors.size());
    sh.coprofs.resize(inst.sections.size());
    for (size_t si = 0; si < inst.sections.size(); ++si) {
        const Section& s = inst.sections[si];
        sh.secs_of_prof[static_cast<size_t>(s.prof_idx)].push_back(static_cast<int>(si));
        std::set<std::string> cp(s.coprofs.begin(), s.coprofs.end());
        sh.coprofs[si].assign(cp.begin(), cp.end());
        if (s.link) sh.link_secs[*s.link].push_back(static_cast<int>(si));
    }
    sh.options = group_section_options(inst, inst.groups);
    sh.opts_of_group.resize(inst.groups.size());
    sh.groups_of_section.resize(inst.sections.size());
    for (const auto& [gi, si] : sh.options) {
        sh.opts_of_group[static_cast<size_t>(gi)].push_back(si);
        sh.groups_of_section[static_cast<size_t>(si)].push_back(gi);
    }
    sh.fulltime = fulltime_professors(inst);
    sh.avail_neg.resize(inst.professors.size(), 0);
    for (size_t pi = 0; pi < inst.professors.size(); ++pi)
        for (int d = 0; d < kD; ++d)
            for (int t = 1; t <= kT; ++t)
                if (inst.professors[pi].avail(d, t) <= 0) sh.avail_neg[pi]++;
    return sh;
}

long long section_overflow_cap(const Instance& inst, const Shape& sh, int si) {
    long long eligible = 0;
    for (int gi : sh.groups_of_section[static_cast<size_t>(si)])
        eligible += inst.groups[static_cast<size_t>(gi)].size;
    return std::max(0LL, eligible - inst.sections[static_cast<size_t>(si)].capacity);
}

}  // namespace

mip::Model build_tip(const Instance& inst, const Weights& w, CapacityMode mode, TipIndex* index) {
    const TimeGrid& grid = inst.grid;
    Shape sh = analyze(inst);

    for (size_t si = 0; si < inst.sections.size(); ++si) {
        const Section& s = inst.sections[si];
        if (sh.crooms[si].empty())
            throw std::runtime_error("section " + s.id + " has no compatible room");
        if (s.is_lab && s.periods > 4)
            throw std::runtime_error("lab " + s.id + " needs " + std::to_string(s.periods) +
                                     " contiguous periods; no block avoids lunch");
    }

    mip::Model m("tip");
    TipIndex local;
    TipIndex& ix = index ? *index : local;
    ix = TipIndex{};

    // --- placement variables -------------------------------------------------
    ix.cands = candidate_assignments(inst);
    std::vector<std::array<std::vector<int>, kS>> z_at(inst.sections.size());
    for (const Candidate& c : ix.cands) {
        int v = m.add_binary(tag("z", inst.sections[static_cast<size_t>(c.section)].id,
                                 grid.day_label(c.day), c.period,
                                 inst.rooms[static_cast<size_t>(c.room)].id));
        z_at[static_cast<size_t>(c.section)][static_cast<size_t>(slot_of(c.day, c.period))]
            .push_back(v);
    }

    ix.w_base = m.num_vars();
    for (const auto& p : inst.professors)
        for (int d = 0; d < kD; ++d)
            for (int t = 1; t <= kT; ++t) m.add_binary(tag("w", p.id, grid.day_label(d), t));
    auto wvar = [&](int pi, int d, int t) { return ix.w_base + kS * pi + slot_of(d, t); };

    ix.x_base = m.num_vars();
    std::map<std::pair<int, int>, int> kof;  // (gi, si) -> option position
    for (size_t k = 0; k < sh.options.size(); ++k) {
        auto [gi, si] = sh.options[k];
        const std::string& gid = inst.groups[static_cast<size_t>(gi)].id;
        const std::string& sid = inst.sections[static_cast<size_t>(si)].id;
        ix.xs.emplace_back(gid, sid);
        kof[{gi, si}] = static_cast<int>(k);
        m.add_binary(tag("x", gid, sid));
    }
    auto xvar = [&](int k) { return ix.x_base + k; };

    ix.u_base = m.num_vars();
    for (size_t k = 0; k < sh.options.size(); ++k) {
        auto [gi, si] = sh.options[k];
        const std::string& gid = inst.groups[static_cast<size_t>(gi)].id;
        const std::string& sid = inst.sections[static_cast<size_t>(si)].id;
        for (int d = 0; d < kD; ++d)
            for (int t = 1; t <= kT; ++t) m.add_binary(tag("u", gid, grid.day_label(d), t, sid));
    }
    auto uvar = [&](int k, int d, int t) { return ix.u_base + kS * k + slot_of(d, t); };

    // --- linearization and penalty variables ---------------------------------
    std::map<int, std::array<int, kD>> y1v;          // lab section -> per day
    std::map<int, std::vector<int>> y2v;             // lab section -> day-major by room
    for (size_t si = 0; si < inst.sections.size(); ++si) {
        const Section& s = inst.sections[si];
        if (!s.is_lab) continue;
        auto& a = y1v[static_cast<int>(si)];
        for (int d = 0; d < kD; ++d) a[static_cast<size_t>(d)] = m.add_binary(tag("y1", s.id, grid.day_label(d)));
    }
    for (size_t si = 0; si < inst.sections.size(); ++si) {
        const Section& s = inst.sections[si];
        if (!s.is_lab) continue;
        auto& v = y2v[static_cast<int>(si)];
        for (int d = 0; d < kD; ++d)
            for (int ri : sh.crooms[si])
                v.push_back(m.add_binary(
                    tag("y2", s.id, grid.day_label(d), inst.rooms[static_cast<size_t>(ri)].id)));
    }
    auto y2var = [&](int si, int d, int rpos) {
        return y2v.at(si)[static_cast<size_t>(d * static_cast<int>(sh.crooms[static_cast<size_t>(si)].size()) + rpos)];
    };

    std::vector<int> y3v(inst.professors.size() * kD), t4v(inst.professors.size() * kD);
    for (size_t pi = 0; pi < inst.professors.size(); ++pi)
        for (int d = 0; d < kD; ++d)
            y3v[pi * kD + static_cast<size_t>(d)] =
                m.add_binary(tag("y3", inst.professors[pi].id, grid.day_label(d)));
    for (size_t pi = 0; pi < inst.professors.size(); ++pi)
        for (int d = 0; d < kD; ++d)
            t4v[pi * kD + static_cast<size_t>(d)] =
                m.add_binary(tag("t4", inst.professors[pi].id, grid.day_label(d)), w.d4);
    std::map<int, int> ttuev;
    for (size_t pi = 0; pi < inst.professors.size(); ++pi)
        if (sh.fulltime.count(inst.professors[pi].id))
            ttuev[static_cast<int>(pi)] = m.add_binary(tag("ttue", inst.professors[pi].id), w.dtue);
    std::vector<int> t5v(inst.professors.size());
    for (size_t pi = 0; pi < inst.professors.size(); ++pi)
        t5v[pi] = m.add_binary(tag("t5", inst.professors[pi].id), w.d5);

    std::map<int, std::array<int, kD>> ygp1v;
    std::map<int, std::array<int, 4>> tgp2v;
    std::map<int, std::array<int, 3>> tgp3v;
    for (size_t si = 0; si < inst.sections.size(); ++si) {
        const Section& s = inst.sections[si];
        if (s.is_lab || (s.periods != 2 && s.periods != 3)) continue;
        auto& a = ygp1v[static_cast<int>(si)];
        for (int d = 0; d < kD; ++d) a[static_cast<size_t>(d)] = m.add_binary(tag("ygp1", s.id, grid.day_label(d)));
    }
    for (size_t si = 0; si < inst.sections.size(); ++si) {
        const Section& s = inst.sections[si];
        if (s.is_lab || s.periods != 2) continue;
        auto& a = tgp2v[static_cast<int>(si)];
        for (int d = 0; d + 1 < kD; ++d)
            a[static_cast<size_t>(d)] = m.add_binary(tag("tgp2", s.id, grid.day_label(d)), w.dgp2);
    }
    for (size_t si = 0; si < inst.sections.size(); ++si) {
        const Section& s = inst.sections[si];
        if (s.is_lab || s.periods != 3) continue;
        auto& a = tgp3v[static_cast<int>(si)];
        for (int d = 0; d + 2 < kD; ++d)
            a[static_cast<size_t>(d)] = m.add_binary(tag("tgp3", s.id, grid.day_label(d)), w.dgp3);
    }

    std::vector<std::array<int, kS>> t0v(inst.professors.size());
    for (auto& a : t0v) a.fill(-1);
    for (size_t pi = 0; pi < inst.professors.size(); ++pi) {
        const Professor& p = inst.professors[pi];
        for (int d = 0; d < kD; ++d)
            for (int t = 1; t <= kT; ++t) {
                int av = p.avail(d, t);
                if (av > 0) continue;
                t0v[pi][static_cast<size_t>(slot_of(d, t))] =
                    m.add_binary(tag("t0", p.id, grid.day_label(d), t), avail_cost(w, p, av));
            }
    }

    std::vector<int> tsv;
    if (mode == CapacityMode::Soft) {
        ix.ts_base = m.num_vars();
        for (size_t si = 0; si < inst.sections.size(); ++si) {
            const Section& s = inst.sections[si];
            tsv.push_back(m.add_integer(
                tag("ts", s.id), 0,
                static_cast<double>(section_overflow_cap(inst, sh, static_cast<int>(si))),
                s.is_lab ? w.ct_lab : w.ct_regular));
        }
    }
    ix.num_vars = m.num_vars();

    auto zsum_terms = [&](int si, int d, int t, double coeff, std::vector<mip::Term>& terms) {
        for (int v : z_at[static_cast<size_t>(si)][static_cast<size_t>(slot_of(d, t))])
            terms.push_back({v, coeff});
    };

    // --- meeting count -------------------------------------------------------
    for (size_t si = 0; si < inst.sections.size(); ++si) {
        const Section& s = inst.sections[si];
        std::vector<mip::Term> terms;
        for (int d = 0; d < kD; ++d)
            for (int t = 1; t <= kT; ++t) zsum_terms(static_cast<int>(si), d, t, 1.0, terms);
        m.add_constraint(tag("h1", s.id), std::move(terms), mip::Sense::Eq,
                         static_cast<double>(s.periods));
    }

    // --- linked sections meet simultaneously ---------------------------------
    for (const auto& [link, secs] : sh.link_secs) {
        for (size_t a = 0; a < secs.size(); ++a)
            for (size_t b = a + 1; b < secs.size(); ++b) {
                const Section& s1 = inst.sections[static_cast<size_t>(secs[a])];
                const Section& s2 = inst.sections[static_cast<size_t>(secs[b])];
                for (int d = 0; d < kD; ++d)
                    for (int t = 1; t <= kT; ++t) {
                        std::vector<mip::Term> terms;
                        zsum_terms(secs[a], d, t, 1.0, terms);
                        zsum_terms(secs[b], d, t, -1.0, terms);
                        m.add_constraint(tag("h2", s1.id, s2.id, grid.day_label(d), t),
                                         std::move(terms), mip::Sense::Eq, 0.0);
                    }
            }
    }

    // --- one section per room per slot ---------------------------------------
    {
        std::vector<std::vector<int>> by_room(inst.rooms.size() * kS);
        for (size_t i = 0; i < ix.cands.size(); ++i) {
            const Candidate& c = ix.cands[i];
            by_room[static_cast<size_t>(c.room) * kS +
                    static_cast<size_t>(slot_of(c.day, c.period))]
                .push_back(static_cast<int>(i));
        }
        for (int d = 0; d < kD; ++d)
            for (int t = 1; t <= kT; ++t)
                for (size_t ri = 0; ri < inst.rooms.size(); ++ri) {
                    auto& vars = by_room[ri * kS + static_cast<size_t>(slot_of(d, t))];
                    if (vars.empty()) continue;  // room hosts no compatible section
                    std::vector<mip::Term> terms;
                    for (int v : vars) terms.push_back({v, 1.0});
                    m.add_constraint(tag("h3", grid.day_label(d), t, inst.rooms[ri].id),
                                     std::move(terms), mip::Sense::Le, 1.0);
                }
    }

    // --- mandated meetings ---------------------------------------------------
    for (size_t si = 0; si < inst.sections.size(); ++si) {
        const Section& s = inst.sections[si];
        for (size_t mi = 0; mi < s.mandates.size(); ++mi) {
            const Mandate& md = s.mandates[mi];
            std::vector<mip::Term> terms;
            if (md.period) {
                zsum_terms(static_cast<int>(si), md.day, *md.period, 1.0, terms);
                m.add_constraint(tag("h4", s.id, static_cast<int>(mi) + 1), std::move(terms),
                                 mip::Sense::Eq, 1.0);
            } else {
                for (int t = 1; t <= kT; ++t) zsum_terms(static_cast<int>(si), md.day, t, 1.0, terms);
                m.add_constraint(tag("h4", s.id, static_cast<int>(mi) + 1), std::move(terms),
                                 mip::Sense::Ge, 1.0);
            }
        }
    }

    // --- lectures spread over days -------------------------------------------
    for (size_t si = 0; si < inst.sections.size(); ++si) {
        const Section& s = inst.sections[si];
        if (s.is_lab) continue;
        for (int d = 0; d < kD; ++d) {
            std::vector<mip::Term> terms;
            for (int t = 1; t <= kT; ++t) zsum_terms(static_cast<int>(si), d, t, 1.0, terms);
            m.add_constraint(tag("h5", s.id, grid.day_label(d)), std::move(terms), mip::Sense::Le,
                             1.0);
        }
    }

    // --- labs meet as one contiguous block -----------------------------------
    auto fpairs = forbidden_lab_pairs(grid);
    auto ftriples = forbidden_lab_triples(grid);
    for (size_t si = 0; si < inst.sections.size(); ++si) {
        const Section& s = inst.sections[si];
        if (!s.is_lab) continue;
        double per = static_cast<double>(s.periods);
        for (int d = 0; d < kD; ++d) {
            std::vector<mip::Term> terms;
            for (int t = 1; t <= kT; ++t) zsum_terms(static_cast<int>(si), d, t, 1.0, terms);
            terms.push_back({y1v.at(static_cast<int>(si))[static_cast<size_t>(d)], -per});
            auto terms2 = terms;
            m.add_constraint(tag("h6a", s.id, grid.day_label(d)), std::move(terms), mip::Sense::Le,
                             0.0);
            m.add_constraint(tag("h6b", s.id, grid.day_label(d)), std::move(terms2), mip::Sense::Ge,
                             0.0);
        }
        for (int d = 0; d < kD; ++d) {
            int rpos = 0;
            for (int ri : sh.crooms[si]) {
                const std::string& rid = inst.rooms[static_cast<size_t>(ri)].id;
                std::vector<mip::Term> terms;
                for (int t = 1; t <= kT; ++t)
                    for (int v : z_at[si][static_cast<size_t>(slot_of(d, t))])
                        if (ix.cands[static_cast<size_t>(v)].room == ri) terms.push_back({v, 1.0});
                terms.push_back({y2var(static_cast<int>(si), d, rpos), -per});
                auto terms2 = terms;
                m.add_constraint(tag("h6c", s.id, grid.day_label(d), rid), std::move(terms),
                                 mip::Sense::Le, 0.0);
                m.add_constraint(tag("h6d", s.id, grid.day_label(d), rid), std::move(terms2),
                                 mip::Sense::Ge, 0.0);
                rpos++;
            }
        }
        auto zat = [&](int d, int t, int ri) -> int {
            for (int v : z_at[si][static_cast<size_t>(slot_of(d, t))])
                if (ix.cands[static_cast<size_t>(v)].room == ri) return v;
            throw std::logic_error("missing placement variable");
        };
        if (s.periods == 2) {
            for (int d = 0; d < kD; ++d)
                for (int ri : sh.crooms[si]) {
                    const std::string& rid = inst.rooms[static_cast<size_t>(ri)].id;
                    for (const auto& pr : fpairs)
                        m.add_constraint(
                            tag("h6p2", s.id, grid.day_label(d), rid, pr[0], pr[1]),
                            {{zat(d, pr[0], ri), 1.0}, {zat(d, pr[1], ri), 1.0}}, mip::Sense::Le,
                            1.0);
                }
        } else if (s.periods == 3) {
            for (int d = 0; d < kD; ++d)
                for (int ri : sh.crooms[si]) {
                    const std::string& rid = inst.rooms[static_cast<size_t>(ri)].id;
                    for (const auto& tr : ftriples)
                        m.add_constraint(
                            tag("h6p3", s.id, grid.day_label(d), rid, tr[0], tr[1], tr[2]),
                            {{zat(d, tr[0], ri), 1.0}, {zat(d, tr[1], ri), 1.0}, {zat(d, tr[2], ri), 1.0}},
                            mip::Sense::Le, 2.0);
                }
        } else if (s.periods == 4) {
            for (int d = 0; d < kD; ++d)
                for (int ri : sh.crooms[si]) {
                    const std::string& rid = inst.rooms[static_cast<size_t>(ri)].id;
                    m.add_constraint(tag("h6p4", s.id, grid.day_label(d), rid),
                                     {{zat(d, 5, ri), 1.0}, {zat(d, 6, ri), 1.0}, {zat(d, 7, ri), 1.0}},
                                     mip::Sense::Eq, 0.0);
                }
        }
    }

    // --- teaching indicator --------------------------------------------------
    for (size_t pi = 0; pi < inst.professors.size(); ++pi)
        for (int d = 0; d < kD; ++d)
            for (int t = 1; t <= kT; ++t) {
                std::vector<mip::Term> terms;
                for (int si : sh.secs_of_prof[pi]) zsum_terms(si, d, t, 1.0, terms);
                terms.push_back({wvar(static_cast<int>(pi), d, t), -1.0});
                m.add_constraint(tag("h7", inst.professors[pi].id, grid.day_label(d), t),
                                 std::move(terms), mip::Sense::Eq, 0.0);
            }

    // --- co-professors attend, so they cannot teach in parallel --------------
    for (size_t si = 0; si < inst.sections.size(); ++si) {
        const Section& s = inst.sections[si];
        for (const auto& cp : sh.coprofs[si]) {
            int pi = inst.prof_of(cp);
            for (int d = 0; d < kD; ++d)
                for (int t = 1; t <= kT; ++t) {
                    std::vector<mip::Term> terms{{wvar(pi, d, t), 1.0}};
                    zsum_terms(static_cast<int>(si), d, t, 1.0, terms);
                    m.add_constraint(tag("h8", s.id, cp, grid.day_label(d), t), std::move(terms),
                                     mip::Sense::Le, 1.0);
                }
        }
    }

    // --- every group takes one section of each curriculum course -------------
    for (size_t gi = 0; gi < inst.groups.size(); ++gi) {
        const Group& g = inst.groups[gi];
        for (const auto& course : g.curriculum) {
            const auto& secs = inst.sections_of_course(inst.course_of(course));
            if (secs.empty())
                throw std::runtime_error("course " + course + " has no sections (group " + g.id +
                                         ")");
            std::vector<mip::Term> terms;
            for (int si : secs)
                terms.push_back({xvar(kof.at({static_cast<int>(gi), si})), 1.0});
            m.add_constraint(tag("h9", g.id, course), std::move(terms), mip::Sense::Eq, 1.0);
        }
    }

    // --- attendance follows enrollment and placement -------------------------
    for (size_t k = 0; k < sh.options.size(); ++k) {
        auto [gi, si] = sh.options[k];
        const Section& s = inst.sections[static_cast<size_t>(si)];
        std::vector<mip::Term> terms;
        for (int d = 0; d < kD; ++d)
            for (int t = 1; t <= kT; ++t) terms.push_back({uvar(static_cast<int>(k), d, t), 1.0});
        terms.push_back({xvar(static_cast<int>(k)), -static_cast<double>(s.periods)});
        m.add_constraint(tag("h10a", inst.groups[static_cast<size_t>(gi)].id, s.id),
                         std::move(terms), mip::Sense::Eq, 0.0);
    }
    for (size_t k = 0; k < sh.options.size(); ++k) {
        auto [gi, si] = sh.options[k];
        const Section& s = inst.sections[static_cast<size_t>(si)];
        const Group& g = inst.groups[static_cast<size_t>(gi)];
        for (int d = 0; d < kD; ++d)
            for (int t = 1; t <= kT; ++t) {
                std::vector<mip::Term> terms{{uvar(static_cast<int>(k), d, t), 1.0},
                                             {xvar(static_cast<int>(k)), -1.0}};
                zsum_terms(si, d, t, -1.0, terms);
                m.add_constraint(tag("h10b", g.id, grid.day_label(d), t, s.id), std::move(terms),
                                 mip::Sense::Ge, -1.0);
            }
    }
    for (size_t gi = 0; gi < inst.groups.size(); ++gi) {
        const Group& g = inst.groups[gi];
        long long want = 0;
        for (int ci : g.curriculum_idx) want += inst.courses[static_cast<size_t>(ci)].periods;
        std::vector<mip::Term> terms;
        for (int si : sh.opts_of_group[gi]) {
            int k = kof.at({static_cast<int>(gi), si});
            for (int d = 0; d < kD; ++d)
                for (int t = 1; t <= kT; ++t) terms.push_back({uvar(k, d, t), 1.0});
        }
        m.add_constraint(tag("h10c", g.id), std::move(terms), mip::Sense::Eq,
                         static_cast<double>(want));
    }
    for (size_t gi = 0; gi < inst.groups.size(); ++gi) {
        const Group& g = inst.groups[gi];
        for (int d = 0; d < kD; ++d)
            for (int t = 1; t <= kT; ++t) {
                std::vector<mip::Term> terms;
                for (int si : sh.opts_of_group[gi])
                    terms.push_back({uvar(kof.at({static_cast<int>(gi), si}), d, t), 1.0});
                m.add_constraint(tag("h10d", g.id, grid.day_label(d), t), std::move(terms),
                                 mip::Sense::Le, 1.0);
            }
    }

    // --- lab enrollment implies the tied lecture -----------------------------
    std::vector<TiePairs> ties(inst.groups.size());
    for (size_t gi = 0; gi < inst.groups.size(); ++gi)
        ties[gi] = tie_pairs_for(inst, sh.opts_of_group[gi]);
    for (size_t gi = 0; gi < inst.groups.size(); ++gi) {
        const Group& g = inst.groups[gi];
        for (const auto& [s0, s1] : ties[gi].lecture_lab)
            m.add_constraint(tag("h11", g.id, inst.sections[static_cast<size_t>(s0)].id,
                                 inst.sections[static_cast<size_t>(s1)].id),
                             {{xvar(kof.at({static_cast<int>(gi), s0})), 1.0},
                              {xvar(kof.at({static_cast<int>(gi), s1})), -1.0}},
                             mip::Sense::Ge, 0.0);
    }

    // --- section loads fit ---------------------------------------------------
    for (size_t si = 0; si < inst.sections.size(); ++si) {
        const Section& s = inst.sections[si];
        if (mode == CapacityMode::Hard && sh.groups_of_section[si].empty()) continue;
        std::vector<mip::Term> terms;
        for (int gi : sh.groups_of_section[si]) {
            const Group& g = inst.groups[static_cast<size_t>(gi)];
            terms.push_back({xvar(kof.at({gi, static_cast<int>(si)})), static_cast<double>(g.size)});
        }
        if (mode == CapacityMode::Soft) terms.push_back({tsv[si], -1.0});
        m.add_constraint(tag("h12", s.id), std::move(terms), mip::Sense::Le,
                         static_cast<double>(s.capacity));
    }

    // --- tied sections: at most 4 shared periods per day ----------------------
    for (size_t gi = 0; gi < inst.groups.size(); ++gi) {
        const Group& g = inst.groups[gi];
        for (const auto& [s0, s1] : ties[gi].unordered) {
            int k0 = kof.at({static_cast<int>(gi), s0});
            int k1 = kof.at({static_cast<int>(gi), s1});
            for (int d = 0; d < kD; ++d) {
                std::vector<mip::Term> terms;
                for (int t = 1; t <= kT; ++t) terms.push_back({uvar(k0, d, t), 1.0});
                for (int t = 1; t <= kT; ++t) terms.push_back({uvar(k1, d, t), 1.0});
                m.add_constraint(tag("h13", g.id, inst.sections[static_cast<size_t>(s0)].id,
                                     inst.sections[static_cast<size_t>(s1)].id, grid.day_label(d)),
                                 std::move(terms), mip::Sense::Le, 4.0);
            }
        }
    }

    // --- tied sections: no back-to-back across lunchless adjacency ------------
    for (size_t gi = 0; gi < inst.groups.size(); ++gi) {
        const Group& g = inst.groups[gi];
        for (const auto& [s0, s1] : ties[gi].ordered) {
            int k0 = kof.at({static_cast<int>(gi), s0});
            int k1 = kof.at({static_cast<int>(gi), s1});
            for (int d = 0; d < kD; ++d)
                for (int t = 1; t + 1 <= kT; ++t) {
                    if (t == grid.lunch_boundary.first) continue;
                    m.add_constraint(
                        tag("h14", g.id, inst.sections[static_cast<size_t>(s0)].id,
                            inst.sections[static_cast<size_t>(s1)].id, grid.day_label(d), t),
                        {{uvar(k0, d, t), 1.0}, {uvar(k1, d, t + 1), 1.0}}, mip::Sense::Le, 1.0);
                }
        }
    }

    // --- soft: day-pattern indicator for short lectures ----------------------
    for (size_t si = 0; si < inst.sections.size(); ++si) {
        const Section& s = inst.sections[si];
        if (s.is_lab || (s.periods != 2 && s.periods != 3)) continue;
        for (int d = 0; d < kD; ++d) {
            std::vector<mip::Term> terms;
            for (int t = 1; t <= kT; ++t) zsum_terms(static_cast<int>(si), d, t, 1.0, terms);
            terms.push_back({ygp1v.at(static_cast<int>(si))[static_cast<size_t>(d)], -1.0});
            m.add_constraint(tag("s1", s.id, grid.day_label(d)), std::move(terms), mip::Sense::Eq,
                             0.0);
        }
    }

    // --- soft: consecutive teaching days for short lectures ------------------
    for (size_t si = 0; si < inst.sections.size(); ++si) {
        const Section& s = inst.sections[si];
        if (s.is_lab) continue;
        if (s.periods == 2) {
            const auto& y = ygp1v.at(static_cast<int>(si));
            const auto& tg = tgp2v.at(static_cast<int>(si));
            for (int d = 0; d + 1 < kD; ++d)
                m.add_constraint(tag("s2", s.id, grid.day_label(d)),
                                 {{y[static_cast<size_t>(d)], 1.0},
                                  {y[static_cast<size_t>(d + 1)], 1.0},
                                  {tg[static_cast<size_t>(d)], -1.0}},
                                 mip::Sense::Le, 1.0);
        } else if (s.periods == 3) {
            const auto& y = ygp1v.at(static_cast<int>(si));
            const auto& tg = tgp3v.at(static_cast<int>(si));
            for (int d = 0; d + 2 < kD; ++d)
                m.add_constraint(tag("s2", s.id, grid.day_label(d)),
                                 {{y[static_cast<size_t>(d)], 1.0},
                                  {y[static_cast<size_t>(d + 1)], 1.0},
                                  {y[static_cast<size_t>(d + 2)], 1.0},
                                  {tg[static_cast<size_t>(d)], -1.0}},
                                 mip::Sense::Le, 2.0);
        }
    }

    // --- soft: teaching days and the day off ---------------------------------
    for (size_t pi = 0; pi < inst.professors.size(); ++pi) {
        const std::string& pid = inst.professors[pi].id;
        for (int d = 0; d < kD; ++d) {
            std::vector<mip::Term> terms;
            for (int t = 1; t <= kT; ++t)
                terms.push_back({wvar(static_cast<int>(pi), d, t), 1.0});
            terms.push_back({y3v[pi * kD + static_cast<size_t>(d)], -static_cast<double>(kT)});
            auto terms2 = terms;
            terms2.back().coeff = -1.0;
            m.add_constraint(tag("s3a", pid, grid.day_label(d)), std::move(terms), mip::Sense::Le,
                             0.0);
            m.add_constraint(tag("s3b", pid, grid.day_label(d)), std::move(terms2), mip::Sense::Ge,
                             0.0);
        }
        std::vector<mip::Term> terms;
        for (int d = 0; d < kD; ++d) terms.push_back({y3v[pi * kD + static_cast<size_t>(d)], 1.0});
        terms.push_back({t5v[pi], -1.0});
        m.add_constraint(tag("s3c", pid), std::move(terms), mip::Sense::Le, 4.0);
    }

    // --- soft: first and last period on one day ------------------------------
    for (size_t pi = 0; pi < inst.professors.size(); ++pi) {
        const std::string& pid = inst.professors[pi].id;
        for (int d = 0; d < kD; ++d)
            m.add_constraint(tag("s4", pid, grid.day_label(d)),
                             {{wvar(static_cast<int>(pi), d, grid.first_period), 1.0},
                              {wvar(static_cast<int>(pi), d, grid.last_period), 1.0},
                              {t4v[pi * kD + static_cast<size_t>(d)], -1.0}},
                             mip::Sense::Le, 1.0);
    }

    // --- soft: full-time professors present on the meeting day ---------------
    for (size_t pi = 0; pi < inst.professors.size(); ++pi) {
        if (!ttuev.count(static_cast<int>(pi))) continue;
        m.add_constraint(tag("s5", inst.professors[pi].id),
                         {{y3v[pi * kD + static_cast<size_t>(w.meeting_day)], 1.0},
                          {ttuev.at(static_cast<int>(pi)), 1.0}},
                         mip::Sense::Ge, 1.0);
    }

    // --- soft: teaching against availability ---------------------------------
    for (size_t pi = 0; pi < inst.professors.size(); ++pi) {
        const Professor& p = inst.professors[pi];
        for (int d = 0; d < kD; ++d)
            for (int t = 1; t <= kT; ++t) {
                if (p.avail(d, t) > 0) continue;
                m.add_constraint(tag("s6a", p.id, grid.day_label(d), t),
                                 {{wvar(static_cast<int>(pi), d, t), 1.0},
                                  {t0v[pi][static_cast<size_t>(slot_of(d, t))], -1.0}},
                                 mip::Sense::Le, 0.0);
            }
    }
    for (size_t si = 0; si < inst.sections.size(); ++si) {
        const Section& s = inst.sections[si];
        for (const auto& cp : sh.coprofs[si]) {
            int pi = inst.prof_of(cp);
            const Professor& p = inst.professors[static_cast<size_t>(pi)];
            for (int d = 0; d < kD; ++d)
                for (int t = 1; t <= kT; ++t) {
                    if (p.avail(d, t) > 0) continue;
                    std::vector<mip::Term> terms;
                    zsum_terms(static_cast<int>(si), d, t, 1.0, terms);
                    terms.push_back({t0v[static_cast<size_t>(pi)][static_cast<size_t>(slot_of(d, t))], -1.0});
                    m.add_constraint(tag("s6b", s.id, cp, grid.day_label(d), t), std::move(terms),
                                     mip::Sense::Le, 0.0);
                }
        }
    }

    return m;
}

TipSize predicted_tip_size(const Instance& inst, CapacityMode mode) {
    Shape sh = analyze(inst);
    TipSize out;
    long long S = static_cast<long long>(inst.sections.size());
    long long P = static_cast<long long>(inst.professors.size());
    long long G = static_cast<long long>(inst.groups.size());
    long long W = static_cast<long long>(sh.options.size());
    long long sum_cr = 0, sum_cr_lab = 0, labs = 0, nl2 = 0, nl3 = 0, nl23 = 0, nonlabs = 0;
    long long h6 = 0, h3_rooms = 0, mandates = 0, coprof_pairs = 0;
    std::vector<char> room_used(inst.rooms.size(), 0);
    for (size_t si = 0; si < inst.sections.size(); ++si) {
        const Section& s = inst.sections[si];
        long long cr = static_cast<long long>(sh.crooms[si].size());
        sum_cr += cr;
        for (int ri : sh.crooms[si]) room_used[static_cast<size_t>(ri)] = 1;
        mandates += static_cast<long long>(s.mandates.size());
        coprof_pairs += static_cast<long long>(sh.coprofs[si].size());
        if (s.is_lab) {
            labs++;
            sum_cr_lab += cr;
            h6 += 10 + 10 * cr;
            if (s.periods == 2) h6 += 80 * cr;
            if (s.periods == 3) h6 += 160 * cr;
            if (s.periods == 4) h6 += 5 * cr;
        } else {
            nonlabs++;
            if (s.periods == 2) nl2++;
            if (s.periods == 3) nl3++;
            if (s.periods == 2 || s.periods == 3) nl23++;
        }
    }
    for (char u : room_used) h3_rooms += u;
    long long H = static_cast<long long>(sh.fulltime.size());
    long long t0 = 0;
    for (int n : sh.avail_neg) t0 += n;

    out.cols = 35 * sum_cr        // z
               + 35 * P           // w
               + W                // x
               + 35 * W           // u
               + 5 * labs         // y1
               + 5 * sum_cr_lab   // y2
               + 5 * P            // y3
               + 5 * P            // t4
               + H                // ttue
               + P                // t5
               + 5 * nl23         // ygp1
               + 4 * nl2          // tgp2
               + 3 * nl3          // tgp3
               + t0;              // t0
    if (mode == CapacityMode::Soft) out.cols += S;  // ts

    long long h2 = 0;
    for (const auto& [link, secs] : sh.link_secs) {
        long long n = static_cast<long long>(secs.size());
        h2 += 35 * n * (n - 1) / 2;
    }
    long long h9 = 0;
    for (const auto& g : inst.groups) h9 += static_cast<long long>(g.curriculum.size());
    long long h11 = 0, h13 = 0, h14 = 0;
    for (size_t gi = 0; gi < inst.groups.size(); ++gi) {
        TiePairs tp = tie_pairs_for(inst, sh.opts_of_group[gi]);
        h11 += static_cast<long long>(tp.lecture_lab.size());
        h13 += 5 * static_cast<long long>(tp.unordered.size());
        h14 += 25 * static_cast<long long>(tp.ordered.size());
    }
    long long h12 = 0;
    if (mode == CapacityMode::Soft) {
        h12 = S;
    } else {
        for (size_t si = 0; si < inst.sections.size(); ++si)
            if (!sh.groups_of_section[si].empty()) h12++;
    }
    long long s6 = t0;
    for (size_t si = 0; si < inst.sections.size(); ++si)
        for (const auto& cp : sh.coprofs[si])
            s6 += sh.avail_neg[static_cast<size_t>(inst.prof_of(cp))];

    out.rows = S                      // h1
               + h2                   // h2
               + 35 * h3_rooms        // h3
               + mandates             // h4
               + 5 * nonlabs          // h5
               + h6                   // h6
               + 35 * P               // h7
               + 35 * coprof_pairs    // h8
               + h9                   // h9
               + W + 35 * W + G + 35 * G  // h10
               + h11                  // h11
               + h12                  // h12
               + h13                  // h13
               + h14                  // h14
               + 5 * nl23             // s1
               + 4 * nl2 + 3 * nl3    // s2
               + 11 * P               // s3
               + 5 * P                // s4
               + H                    // s5
               + s6;                  // s6
    return out;
}

Timetable decode_solution(const Instance& inst, const TipIndex& index,
                          const std::vector<double>& values) {
    if (static_cast<int>(values.size()) != index.num_vars)
        throw std::runtime_error("solution has " + std::to_string(values.size()) +
                                 " values, model has " + std::to_string(index.num_vars));
    auto as_int = [&](double v, const std::string& what) {
        double r = std::round(v);
        if (std::abs(v - r) > mip::kIntTol)
            throw std::runtime_error("fractional value " + std::to_string(v) + " for " + what);
        return static_cast<long long>(r);
    };
    Timetable tt;
    for (size_t i = 0; i < index.cands.size(); ++i) {
        const Candidate& c = index.cands[i];
        const Section& s = inst.sections[static_cast<size_t>(c.section)];
        long long v = as_int(values[i], "placement of " + s.id);
        if (v == 0) continue;
        if (v != 1) throw std::runtime_error("placement of " + s.id + " out of range");
        tt.meetings[s.id].push_back({c.day, c.period, inst.rooms[static_cast<size_t>(c.room)].id});
        tt.prof_grid[s.prof].insert({c.day, c.period});
    }
    for (auto& [sid, ms] : tt.meetings) std::sort(ms.begin(), ms.end());
    for (size_t k = 0; k < index.xs.size(); ++k) {
        const auto& [gid, sid] = index.xs[k];
        long long v = as_int(values[static_cast<size_t>(index.x_base) + k],
                             "enrollment " + gid + "/" + sid);
        if (v == 1) tt.enrollments[gid].insert(sid);
        else if (v != 0) throw std::runtime_error("enrollment " + gid + "/" + sid + " out of range");
    }
    if (index.ts_base >= 0) {
        for (size_t si = 0; si < inst.sections.size(); ++si) {
            long long v = as_int(values[static_cast<size_t>(index.ts_base) + si],
                                 "overflow of " + inst.sections[si].id);
            if (v > 0) tt.over_capacity[inst.sections[si].id] = static_cast<int>(v);
        }
    }
    return tt;
}

}  // namespace ttab
