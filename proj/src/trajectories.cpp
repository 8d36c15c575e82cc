#include "rydsim/trajectories.hpp"

#include "rydsim/errors.hpp"
#include "rydsim/rng.hpp"
#include "rydsim/statevector.hpp"
#include "rydsim/units.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace rydsim {

void NoiseModel::validate() const {
    auto chk = [](double v, double hi, const char* what) {
        if (!(v >= 0.0 && v <= hi))
            throw config_error(std::string("noise probability ") + what +
                               " outside [0, " + std::to_string(hi) + "]");
    };
    chk(cz_pauli, 0.5, "cz_pauli");
    chk(cz_loss, 0.5, "cz_loss");
    chk(cz_depol, 0.9375, "cz_depol");
    chk(leak_per_cz, 0.5, "leak_per_cz");
    chk(init_pauli, 0.5, "init_pauli");
    chk(init_loss, 0.5, "init_loss");
    chk(meas_pauli, 0.5, "meas_pauli");
    chk(meas_loss, 0.5, "meas_loss");
    chk(move_pauli, 0.5, "move_pauli");
    chk(move_loss, 0.5, "move_loss");
}

bool NoiseModel::trivial() const {
    return cz_pauli == 0 && cz_loss == 0 && cz_depol == 0 && leak_per_cz == 0 &&
           init_pauli == 0 && init_loss == 0 && meas_pauli == 0 &&
           meas_loss == 0 && move_pauli == 0 && move_loss == 0;
}

namespace {

enum SiteKind : std::uint8_t {
    k_init_pauli,
    k_init_loss,
    k_move_pauli,
    k_move_loss,
    k_cz_depol,
    k_cz_pauli,
    k_cz_loss,
    k_cz_leak,
    k_meas_pauli,
    k_meas_loss,
};

struct Site {
    SiteKind kind;
    std::uint8_t a = 0, b = 0;
};

// Flattened walk over every noise location of a circuit. Ordinal o indexes
// sites; pre[o] lists the layers applied on arrival at o, which pins down
// how gates interleave with fault sites. One sentinel entry past the end
// catches layers after the last site. Ordinals are structural: they do not
// depend on which probabilities are nonzero.
struct Tape {
    const CircuitSpec* spec = nullptr;
    std::vector<Site> sites;
    std::vector<std::vector<int>> pre;
    std::vector<double> prob;
};

double site_prob(SiteKind k, const NoiseModel& nm) {
    switch (k) {
        case k_init_pauli: return nm.init_pauli;
        case k_init_loss: return nm.init_loss;
        case k_move_pauli: return nm.move_pauli;
        case k_move_loss: return nm.move_loss;
        case k_cz_depol: return nm.cz_depol;
        case k_cz_pauli: return nm.cz_pauli;
        case k_cz_loss: return nm.cz_loss;
        case k_cz_leak: return nm.leak_per_cz;
        case k_meas_pauli: return nm.meas_pauli;
        case k_meas_loss: return nm.meas_loss;
    }
    return 0.0;
}

Tape build_tape(const CircuitSpec& spec, const NoiseModel& nm) {
    Tape t;
    t.spec = &spec;
    std::vector<int> pending;
    auto site = [&t, &pending](SiteKind k, int a, int b = 0) {
        t.pre.push_back(pending);
        pending.clear();
        t.sites.push_back({k, std::uint8_t(a), std::uint8_t(b)});
    };
    for (int q = 0; q < spec.n_qubits; ++q) {
        site(k_init_pauli, q);
        site(k_init_loss, q);
    }
    for (int li = 0; li < int(spec.layers.size()); ++li) {
        const Layer& L = spec.layers[li];
        if (!L.is_rotation)
            for (int q = 0; q < spec.n_qubits; ++q) {
                site(k_move_pauli, q);
                site(k_move_loss, q);
            }
        pending.push_back(li);
        if (!L.is_rotation)
            for (const auto& pr : L.cz_pairs) {
                site(k_cz_depol, pr.first, pr.second);
                for (int q : {pr.first, pr.second}) {
                    site(k_cz_pauli, q);
                    site(k_cz_loss, q);
                    site(k_cz_leak, q);
                }
            }
    }
    for (int q = 0; q < spec.n_qubits; ++q) {
        site(k_meas_pauli, q);
        site(k_meas_loss, q);
    }
    t.pre.push_back(pending);
    t.prob.reserve(t.sites.size());
    for (const auto& s : t.sites) t.prob.push_back(site_prob(s.kind, nm));
    return t;
}

// Event code: ordinal << 5 | detail, with detail 1 = loss, 2 = leak flag,
// 4+t = Pauli t (0 X, 1 Y, 2 Z), 8+t = one of the 15 nontrivial two-qubit
// Paulis. A zero-probability site consumes no draw, so the fault stream
// stays aligned under any one noise model but not across different ones.
std::vector<std::uint32_t> draw_faults(const Tape& t, Rng& rng) {
    std::vector<std::uint32_t> ev;
    for (std::uint32_t o = 0; o < t.sites.size(); ++o) {
        double p = t.prob[o];
        if (p <= 0.0 || rng.uniform() >= p) continue;
        std::uint32_t detail = 0;
        switch (t.sites[o].kind) {
            case k_init_loss:
            case k_move_loss:
            case k_cz_loss:
            case k_meas_loss: detail = 1; break;
            case k_cz_leak: detail = 2; break;
            case k_init_pauli:
            case k_move_pauli:
            case k_cz_pauli:
            case k_meas_pauli: detail = 4 + std::uint32_t(rng.below(3)); break;
            case k_cz_depol: detail = 8 + std::uint32_t(rng.below(15)); break;
        }
        ev.push_back(o << 5 | detail);
    }
    return ev;
}

double one_prob(const StateVector& s, int q) {
    const std::uint64_t mask = std::uint64_t(1) << q;
    double p = 0.0;
    for (std::uint64_t i = 0; i < s.amp.size(); ++i)
        if (i & mask) p += std::norm(s.amp[i]);
    return p;
}

struct SvCtx {
    StateVector st;
    std::uint32_t lost = 0, leaked = 0;
    std::uint16_t czc = 0;
    std::uint32_t pos = 0;
};

// fast = production kernels (fused rotation pairs, one-pass CZ layer);
// otherwise the serial reference kernels. Both orderings round identically,
// which is what keeps backends bit-for-bit comparable.
void apply_layer_masked(StateVector& st, const Layer& L, std::uint32_t lost,
                        std::uint16_t& czc, bool fast) {
    if (L.is_rotation) {
        cplx m[4];
        rotation_matrix(L.axis, L.angle, m);
        std::vector<int> tg;
        if (L.targets.empty())
            for (int q = 0; q < st.n; ++q) tg.push_back(q);
        else
            tg = L.targets;
        tg.erase(std::remove_if(tg.begin(), tg.end(),
                                [lost](int q) { return lost >> q & 1; }),
                 tg.end());
        if (fast) {
            std::size_t i = 0;
            for (; i + 1 < tg.size(); i += 2) apply_1q_both(st, m, tg[i], tg[i + 1]);
            if (i < tg.size()) apply_1q(st, tg[i], m);
        } else {
            for (int q : tg) serial::apply_1q(st, q, m);
        }
    } else {
        std::vector<std::pair<int, int>> alive;
        for (const auto& pr : L.cz_pairs)
            if (!((lost >> pr.first | lost >> pr.second) & 1)) alive.push_back(pr);
        czc = std::uint16_t(czc + alive.size());
        if (alive.empty()) return;
        if (fast)
            apply_cz_pairs(st, alive);
        else
            for (const auto& pr : alive) serial::apply_cz(st, pr.first, pr.second);
    }
}

void advance_to(SvCtx& c, const Tape& t, std::uint32_t target, bool fast) {
    for (std::uint32_t o = c.pos; o <= target; ++o)
        for (int li : t.pre[o])
            apply_layer_masked(c.st, t.spec->layers[li], c.lost, c.czc, fast);
    c.pos = target;
}

// Applies one fault event. Loss of a still-present atom consumes one
// state-stream draw for the Born-sampled projection outcome; everything on
// an already-lost atom is a no-op.
void apply_event_sv(SvCtx& c, const Tape& t, std::uint32_t code, Rng& srng) {
    const Site& s = t.sites[code >> 5];
    const std::uint32_t d = code & 31u;
    const bool gone_a = c.lost >> s.a & 1;
    if (d == 2) {
        if (!gone_a) c.leaked |= 1u << s.a;
        return;
    }
    if (d == 1) {
        if (gone_a) return;
        const double p1 = one_prob(c.st, s.a);
        const int out = srng.uniform() < p1 ? 1 : 0;
        project_qubit(c.st, s.a, out);
        c.lost |= 1u << s.a;
        return;
    }
    if (d >= 8) {
        const int t15 = int(d) - 8 + 1;
        const int pa = t15 >> 2, pb = t15 & 3;
        if (pa && !gone_a) apply_pauli(c.st, s.a, pa);
        if (pb && !(c.lost >> s.b & 1)) apply_pauli(c.st, s.b, pb);
        return;
    }
    if (!gone_a) apply_pauli(c.st, s.a, int(d) - 3);
}

// One state-stream draw per qubit, most significant first, by conditional
// bisection of the cumulative distribution. A present qubit takes the Born
// branch; a lost one reports a coin flip while the interval follows where
// the projected state actually sits.
std::uint32_t readout_bits(const std::vector<double>& pre, int n,
                           std::uint32_t lost, Rng& srng) {
    std::size_t a = 0, b = std::size_t(1) << n;
    std::uint32_t bits = 0;
    for (int q = n - 1; q >= 0; --q) {
        const std::size_t mid = a + ((b - a) >> 1);
        const double tot = pre[b] - pre[a];
        const double p1 = tot > 0.0 ? (pre[b] - pre[mid]) / tot : 0.0;
        const double u = srng.uniform();
        bool bit;
        if (lost >> q & 1) {
            bit = u < 0.5;
            if (p1 >= 0.5) a = mid; else b = mid;
        } else {
            bit = u < p1;
            if (bit) a = mid; else b = mid;
        }
        if (bit) bits |= 1u << q;
    }
    return bits;
}

std::vector<double> prefix_sums(const StateVector& st) {
    auto probs = probabilities(st);
    std::vector<double> pre(probs.size() + 1, 0.0);
    for (std::size_t i = 0; i < probs.size(); ++i) pre[i + 1] = pre[i] + probs[i];
    return pre;
}

std::vector<ShotRecord> run_reference(const CircuitSpec& spec, const Tape& tape,
                                      int n_shots, std::uint64_t seed) {
    std::vector<ShotRecord> out(static_cast<std::size_t>(n_shots));
    const auto end = std::uint32_t(tape.sites.size());
    for (int sh = 0; sh < n_shots; ++sh) {
        Rng frng(seed, 2ull * std::uint64_t(sh));
        Rng srng(seed, 2ull * std::uint64_t(sh) + 1);
        const auto ev = draw_faults(tape, frng);
        SvCtx c{StateVector::zero(spec.n_qubits)};
        for (std::uint32_t code : ev) {
            advance_to(c, tape, code >> 5, false);
            apply_event_sv(c, tape, code, srng);
            c.pos = (code >> 5) + 1;
        }
        advance_to(c, tape, end, false);
        const auto pre = prefix_sums(c.st);
        ShotRecord r;
        r.bits = readout_bits(pre, spec.n_qubits, c.lost, srng);
        r.lost = c.lost;
        r.leaked = c.leaked;
        r.cz_applied = c.czc;
        out[std::size_t(sh)] = r;
    }
    return out;
}

struct GShot {
    int idx = 0;
    std::vector<std::uint32_t> ev;
    std::size_t cur = 0;
    Rng srng{0, 0};
};

void emit_leaf(const std::vector<GShot*>& shots, SvCtx& c, int n,
               std::vector<ShotRecord>& out) {
    const auto pre = prefix_sums(c.st);
    for (GShot* s : shots) {
        ShotRecord r;
        r.bits = readout_bits(pre, n, c.lost, s->srng);
        r.lost = c.lost;
        r.leaked = c.leaked;
        r.cz_applied = c.czc;
        out[std::size_t(s->idx)] = r;
    }
}

// Shots sharing a fault pattern share one evolution; where patterns (or
// Born-sampled loss outcomes) diverge the node forks, copying the state
// once per branch. The no-fault bulk therefore rides a single pass down the
// tape.
void run_node(std::vector<GShot*> shots, SvCtx c, const Tape& tape,
              std::vector<ShotRecord>& out) {
    const auto end = std::uint32_t(tape.sites.size());
    for (;;) {
        std::uint32_t best = UINT32_MAX;
        for (GShot* s : shots)
            if (s->cur < s->ev.size()) best = std::min(best, s->ev[s->cur]);
        if (best == UINT32_MAX) {
            advance_to(c, tape, end, true);
            emit_leaf(shots, c, tape.spec->n_qubits, out);
            return;
        }
        const std::uint32_t o = best >> 5;
        advance_to(c, tape, o, true);
        std::map<std::uint32_t, std::vector<GShot*>> sub;
        std::vector<GShot*> later;
        for (GShot* s : shots) {
            if (s->cur < s->ev.size() && (s->ev[s->cur] >> 5) == o) {
                sub[s->ev[s->cur]].push_back(s);
                ++s->cur;
            } else {
                later.push_back(s);
            }
        }
        const std::uint32_t resume = o + 1;
        for (auto& [code, group] : sub) {
            const Site& site = tape.sites[o];
            const bool gone = c.lost >> site.a & 1;
            if ((code & 31u) == 1 && !gone) {
                const double p1 = one_prob(c.st, site.a);
                std::vector<GShot*> split[2];
                for (GShot* s : group)
                    split[s->srng.uniform() < p1 ? 1 : 0].push_back(s);
                for (int outc = 0; outc < 2; ++outc) {
                    if (split[outc].empty()) continue;
                    SvCtx cc = c;
                    cc.pos = resume;
                    project_qubit(cc.st, site.a, outc);
                    cc.lost |= 1u << site.a;
                    run_node(std::move(split[outc]), std::move(cc), tape, out);
                }
            } else {
                SvCtx cc = c;
                cc.pos = resume;
                Rng unused(0, 0); // loss-on-lost and flag events draw nothing
                apply_event_sv(cc, tape, code, unused);
                run_node(std::move(group), std::move(cc), tape, out);
            }
        }
        if (later.empty()) return;
        shots = std::move(later);
        c.pos = resume;
    }
}

std::vector<ShotRecord> run_grouped(const CircuitSpec& spec, const Tape& tape,
                                    int n_shots, std::uint64_t seed) {
    std::vector<ShotRecord> out(static_cast<std::size_t>(n_shots));
    std::vector<GShot> shots(static_cast<std::size_t>(n_shots));
    std::vector<GShot*> ptrs(static_cast<std::size_t>(n_shots));
    for (int i = 0; i < n_shots; ++i) {
        Rng frng(seed, 2ull * std::uint64_t(i));
        shots[std::size_t(i)].idx = i;
        shots[std::size_t(i)].ev = draw_faults(tape, frng);
        shots[std::size_t(i)].srng = Rng(seed, 2ull * std::uint64_t(i) + 1);
        ptrs[std::size_t(i)] = &shots[std::size_t(i)];
    }
    run_node(std::move(ptrs), SvCtx{StateVector::zero(spec.n_qubits)}, tape, out);
    return out;
}

// ---- stabilizer backend ----

int quarter_turns(double angle) {
    const double k = std::round(angle / (0.5 * pi));
    if (std::abs(angle - k * 0.5 * pi) > 1e-9) return -1;
    return (int(k) % 4 + 4) % 4;
}

struct PauliBits {
    std::uint32_t x = 0, z = 0;
    std::uint8_t r = 0;
};

// i-phase exponent from multiplying single-qubit factors (f first, then h)
int phase_g(int xf, int zf, int xh, int zh) {
    if (!xf && !zf) return 0;
    if (xf && zf) return zh - xh;
    if (xf) return zh * (2 * xh - 1);
    return xh * (1 - 2 * zh);
}

void h_row(PauliBits& p, int q) {
    const std::uint32_t xq = p.x >> q & 1, zq = p.z >> q & 1;
    p.r ^= std::uint8_t(xq & zq);
    const std::uint32_t df = (xq ^ zq) << q;
    p.x ^= df;
    p.z ^= df;
}

void s_row(PauliBits& p, int q) {
    const std::uint32_t xq = p.x >> q & 1, zq = p.z >> q & 1;
    p.r ^= std::uint8_t(xq & zq);
    p.z ^= xq << q;
}

void x_row(PauliBits& p, int q) { p.r ^= std::uint8_t(p.z >> q & 1); }
void y_row(PauliBits& p, int q) { p.r ^= std::uint8_t((p.x ^ p.z) >> q & 1); }
void z_row(PauliBits& p, int q) { p.r ^= std::uint8_t(p.x >> q & 1); }

void cnot_row(PauliBits& p, int c, int t) {
    const std::uint32_t xc = p.x >> c & 1, zt = p.z >> t & 1;
    const std::uint32_t xt = p.x >> t & 1, zc = p.z >> c & 1;
    p.r ^= std::uint8_t(xc & zt & (xt ^ zc ^ 1));
    p.x ^= xc << t;
    p.z ^= zt << c;
}

void cz_row(PauliBits& p, int a, int b) {
    h_row(p, b);
    cnot_row(p, a, b);
    h_row(p, b);
}

void pauli_row(PauliBits& p, int which, int q) {
    if (which == 1) x_row(p, q);
    else if (which == 2) y_row(p, q);
    else z_row(p, q);
}

// quarter-turn rotation, k in 1..3, as its conjugation action
void rot_row(PauliBits& p, Axis ax, int k, int q) {
    switch (ax) {
        case Axis::Z:
            if (k == 2) z_row(p, q);
            else if (k == 1) s_row(p, q);
            else { s_row(p, q); s_row(p, q); s_row(p, q); }
            break;
        case Axis::X:
            if (k == 2) x_row(p, q);
            else {
                h_row(p, q);
                for (int i = 0; i < (k == 1 ? 1 : 3); ++i) s_row(p, q);
                h_row(p, q);
            }
            break;
        case Axis::Y:
            if (k == 2) y_row(p, q);
            else if (k == 1) { z_row(p, q); h_row(p, q); }
            else { h_row(p, q); z_row(p, q); }
            break;
    }
}

// Aaronson-Gottesman tableau: rows 0..n-1 destabilizers, n..2n-1 stabilizers.
struct Tableau {
    int n;
    std::vector<PauliBits> row;

    explicit Tableau(int nq) : n(nq), row(2 * std::size_t(nq)) {
        for (int i = 0; i < nq; ++i) {
            row[std::size_t(i)].x = 1u << i;
            row[std::size_t(nq + i)].z = 1u << i;
        }
    }

    void rotation(Axis ax, int k, int q) {
        for (auto& p : row) rot_row(p, ax, k, q);
    }
    void pauli(int which, int q) {
        for (auto& p : row) pauli_row(p, which, q);
    }
    void cz(int a, int b) {
        for (auto& p : row) cz_row(p, a, b);
    }

    void rowsum(PauliBits& h, const PauliBits& f) const {
        int ph = 2 * h.r + 2 * f.r;
        for (int q = 0; q < n; ++q)
            ph += phase_g(f.x >> q & 1, f.z >> q & 1, h.x >> q & 1, h.z >> q & 1);
        h.x ^= f.x;
        h.z ^= f.z;
        h.r = std::uint8_t(((ph % 4) + 4) % 4 / 2);
    }

    // 0, 1/2, or 1; pivot is the stabilizer row to collapse with when the
    // outcome is random, else -1
    double one_prob(int q, int& pivot) const {
        pivot = -1;
        for (int i = n; i < 2 * n; ++i)
            if (row[std::size_t(i)].x >> q & 1) {
                pivot = i;
                break;
            }
        if (pivot >= 0) return 0.5;
        PauliBits acc;
        for (int i = 0; i < n; ++i)
            if (row[std::size_t(i)].x >> q & 1) rowsum(acc, row[std::size_t(i + n)]);
        return acc.r ? 1.0 : 0.0;
    }

    void collapse(int q, int pivot, int outcome) {
        for (int i = 0; i < 2 * n; ++i)
            if (i != pivot && (row[std::size_t(i)].x >> q & 1))
                rowsum(row[std::size_t(i)], row[std::size_t(pivot)]);
        row[std::size_t(pivot - n)] = row[std::size_t(pivot)];
        row[std::size_t(pivot)] = PauliBits{0, 1u << q, std::uint8_t(outcome)};
    }
};

std::vector<ShotRecord> run_tableau(const CircuitSpec& spec, const Tape& tape,
                                    int n_shots, std::uint64_t seed) {
    const int n = spec.n_qubits;
    const auto end = std::uint32_t(tape.sites.size());
    std::vector<ShotRecord> out(static_cast<std::size_t>(n_shots));
    for (int sh = 0; sh < n_shots; ++sh) {
        Rng frng(seed, 2ull * std::uint64_t(sh));
        Rng srng(seed, 2ull * std::uint64_t(sh) + 1);
        const auto ev = draw_faults(tape, frng);
        Tableau tb(n);
        std::uint32_t lost = 0, leaked = 0, pos = 0;
        std::uint16_t czc = 0;

        auto apply_pre = [&](std::uint32_t o) {
            for (int li : tape.pre[o]) {
                const Layer& L = spec.layers[std::size_t(li)];
                if (L.is_rotation) {
                    const int k = quarter_turns(L.angle);
                    if (k <= 0) continue;
                    if (L.targets.empty()) {
                        for (int q = 0; q < n; ++q)
                            if (!(lost >> q & 1)) tb.rotation(L.axis, k, q);
                    } else {
                        for (int q : L.targets)
                            if (!(lost >> q & 1)) tb.rotation(L.axis, k, q);
                    }
                } else {
                    for (const auto& pr : L.cz_pairs)
                        if (!((lost >> pr.first | lost >> pr.second) & 1)) {
                            tb.cz(pr.first, pr.second);
                            ++czc;
                        }
                }
            }
        };
        auto advance = [&](std::uint32_t target) {
            for (std::uint32_t o = pos; o <= target; ++o) apply_pre(o);
            pos = target;
        };

        for (std::uint32_t code : ev) {
            const std::uint32_t o = code >> 5;
            advance(o);
            const Site& site = tape.sites[o];
            const std::uint32_t d = code & 31u;
            const bool gone = lost >> site.a & 1;
            if (d == 2) {
                if (!gone) leaked |= 1u << site.a;
            } else if (d == 1) {
                if (!gone) {
                    int piv = -1;
                    const double p1 = tb.one_prob(site.a, piv);
                    const int outc = srng.uniform() < p1 ? 1 : 0;
                    if (piv >= 0) tb.collapse(site.a, piv, outc);
                    lost |= 1u << site.a;
                }
            } else if (d >= 8) {
                const int t15 = int(d) - 8 + 1;
                const int pa = t15 >> 2, pb = t15 & 3;
                if (pa && !gone) tb.pauli(pa, site.a);
                if (pb && !(lost >> site.b & 1)) tb.pauli(pb, site.b);
            } else {
                if (!gone) tb.pauli(int(d) - 3, site.a);
            }
            pos = o + 1;
        }
        advance(end);

        std::uint32_t bits = 0;
        for (int q = n - 1; q >= 0; --q) {
            const double u = srng.uniform();
            bool bit;
            if (lost >> q & 1) {
                bit = u < 0.5;
            } else {
                int piv = -1;
                const double p1 = tb.one_prob(q, piv);
                bit = u < p1;
                if (piv >= 0) tb.collapse(q, piv, bit ? 1 : 0);
            }
            if (bit) bits |= 1u << q;
        }
        ShotRecord r;
        r.bits = bits;
        r.lost = lost;
        r.leaked = leaked;
        r.cz_applied = czc;
        out[std::size_t(sh)] = r;
    }
    return out;
}

} // namespace

bool clifford_circuit(const CircuitSpec& spec) {
    for (const auto& L : spec.layers)
        if (L.is_rotation && quarter_turns(L.angle) < 0) return false;
    return true;
}

SurvivalCount site_survival(const CircuitSpec& spec) {
    spec.validate();
    if (!clifford_circuit(spec))
        throw config_error("site_survival needs quarter-turn rotations");
    const NoiseModel none;
    const Tape tape = build_tape(spec, none);

    struct GateAt {
        std::uint32_t ord;
        int layer;
    };
    std::vector<GateAt> gates;
    for (std::uint32_t o = 0; o < tape.pre.size(); ++o)
        for (int li : tape.pre[o]) gates.push_back({o, li});

    auto conj_layer = [&spec](PauliBits& p, const Layer& L) {
        if (L.is_rotation) {
            const int k = quarter_turns(L.angle);
            if (k <= 0) return;
            if (L.targets.empty()) {
                for (int q = 0; q < spec.n_qubits; ++q) rot_row(p, L.axis, k, q);
            } else {
                for (int q : L.targets) rot_row(p, L.axis, k, q);
            }
        } else {
            for (const auto& pr : L.cz_pairs) cz_row(p, pr.first, pr.second);
        }
    };

    SurvivalCount sc;
    int surviving = 0;
    for (std::uint32_t o = 0; o < tape.sites.size(); ++o) {
        if (tape.sites[o].kind != k_cz_pauli) continue;
        ++sc.sites;
        const int q = tape.sites[o].a;
        for (int w = 1; w <= 3; ++w) {
            PauliBits p;
            if (w != 3) p.x = 1u << q;
            if (w != 1) p.z = 1u << q;
            for (const auto& g : gates)
                if (g.ord > o) conj_layer(p, spec.layers[std::size_t(g.layer)]);
            if (p.x == 0) ++surviving;
        }
    }
    sc.fraction = sc.sites ? surviving / double(3 * sc.sites) : 0.0;
    return sc;
}

std::vector<ShotRecord> run_trajectories(const CircuitSpec& spec,
                                         const NoiseModel& noise, int n_shots,
                                         std::uint64_t seed,
                                         TrajectoryBackend backend) {
    spec.validate();
    noise.validate();
    if (n_shots < 0) throw config_error("negative shot count");
    if (spec.n_qubits > 26)
        throw resource_error("trajectory sampling capped at 26 qubits");
    if (n_shots == 0) return {};
    const Tape tape = build_tape(spec, noise);
    if (backend == TrajectoryBackend::automatic)
        backend = (clifford_circuit(spec) && spec.n_qubits > 12)
                      ? TrajectoryBackend::tableau
                      : TrajectoryBackend::grouped;
    switch (backend) {
        case TrajectoryBackend::reference:
            return run_reference(spec, tape, n_shots, seed);
        case TrajectoryBackend::tableau:
            if (!clifford_circuit(spec))
                throw config_error("tableau backend needs quarter-turn rotations");
            return run_tableau(spec, tape, n_shots, seed);
        default:
            return run_grouped(spec, tape, n_shots, seed);
    }
}

} // namespace rydsim
