#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kfc/poly.hpp"

namespace kfc {

// Internal grading convention for every ring: (gr_U, gr_V).
//   U has degree (-2, 0), V has degree (0, -2), the differential has degree (-1, -1),
//   skew-graded maps swap the two coordinates.
// For F2[U] complexes this encodes (A, M) as gr_U = M, gr_V = M - 2A.
struct Grading {
    int u = 0, v = 0;
    bool operator==(const Grading& o) const { return u == o.u && v == o.v; }
    bool operator!=(const Grading& o) const { return !(*this == o); }
    bool operator<(const Grading& o) const { return u != o.u ? u < o.u : v < o.v; }
    Grading operator+(const Grading& o) const { return {u + o.u, v + o.v}; }
    Grading operator-(const Grading& o) const { return {u - o.u, v - o.v}; }
};

inline Grading swap_gr(Grading g) { return {g.v, g.u}; }
inline int alexander(Grading g) { return (g.u - g.v) / 2; }
inline int maslov(Grading g) { return g.u; }
inline Grading from_am(int A, int M) { return {M, M - 2 * A}; }

struct Generator {
    std::string label;
    Grading gr;
};

// Finitely generated free bigraded chain complex over F2, F2[U], R = F2[U,V]/(UV) or F2[U,V].
class Complex {
public:
    Complex() = default;
    Complex(Ring ring, std::vector<Generator> gens);

    Ring ring() const { return ring_; }
    int rank() const { return int(gens_.size()); }
    const std::vector<Generator>& gens() const { return gens_; }
    const Generator& gen(int i) const { return gens_[i]; }
    int index_of(const std::string& label) const;  // -1 if absent

    const Poly& entry(int from, int to) const;       // coefficient of gen[to] in d(gen[from])
    void set_entry(int from, int to, const Poly& p); // replaces, ring-reduced
    void add_entry(int from, int to, const Poly& p);
    const std::vector<std::pair<int, Poly>>& dif(int from) const { return d_[from]; }

    // Image of sum_i x[i] gen_i under the differential; x is a dense coefficient vector.
    std::vector<Poly> apply_d(const std::vector<Poly>& x) const;

    bool operator==(const Complex& o) const;

private:
    Ring ring_ = Ring::F2;
    std::vector<Generator> gens_;
    std::map<std::string, int> index_;
    std::vector<std::vector<std::pair<int, Poly>>> d_;  // d_[from], sorted by target
};

using ComplexPtr = std::shared_ptr<const Complex>;

// Homogeneous F2[U,V]-linear (or skew-linear) map between complexes.
// Straight: gr(f(x)) = gr(x) + shift. Skew: gr(f(x)) = swap(gr(x)) + shift,
// and coefficients conjugate through the map: f(U^aV^b x) = U^bV^a f(x).
struct GMap {
    ComplexPtr src, dst;
    Grading shift{0, 0};
    bool skew = false;
    std::vector<std::vector<std::pair<int, Poly>>> e;  // e[i] = image of src gen i

    static GMap zero(ComplexPtr s, ComplexPtr t, Grading shift = {0, 0}, bool skew = false);
    static GMap identity(ComplexPtr c);

    const Poly& entry(int from, int to) const;
    void set_entry(int from, int to, const Poly& p);
    void add_entry(int from, int to, const Poly& p);
    bool is_zero() const;
    bool operator==(const GMap& o) const;
};

std::vector<Poly> apply_map(const GMap& f, const std::vector<Poly>& x);
GMap compose(const GMap& g, const GMap& f);  // g after f
GMap add(const GMap& f, const GMap& g);

// d as a GMap of shift (-1,-1) on C.
GMap differential_map(ComplexPtr c);

// The admissible monomial (if any) for an entry from grading gx to gy under (shift, skew).
std::optional<Mono> admissible_mono(Ring ring, Grading gx, Grading gy, Grading shift, bool skew);

// f is a chain map: d f + f d = 0 (with skew conjugation if f is skew).
bool is_chain_map(const GMap& f);
// Entries homogeneous for the declared (shift, skew).
bool is_homogeneous(const GMap& f);

struct ValidationReport {
    std::vector<std::string> errors;  // empty iff valid
    std::vector<std::string> notes;   // informational only
    bool ok() const { return errors.empty(); }
};

ValidationReport validate(const Complex& c);

enum class TruncMode { SetU0, SetV0, SetUV0, ModUV };

// Ring change along the quotient; SetU0 on a UV-family ring re-presents the result as an
// F2[U]-complex with the roles of U and V (and the two gradings) exchanged.
Complex truncate(const Complex& c, TruncMode mode);

// Hat truncation (everything to F2): SetU0 for F2U, SetUV0 for R/F2UV, identity for F2.
Complex hat(const Complex& c);
// Hat image of a map whose source/target hats are given.
GMap hat_map(const GMap& f, ComplexPtr hat_src, ComplexPtr hat_dst);

Complex tensor(const Complex& a, const Complex& b);
std::string tensor_label(const std::string& a, const std::string& b);
// Kronecker product of maps on tensor complexes built by tensor().
GMap tensor_map(const GMap& f, const GMap& g, ComplexPtr src, ComplexPtr dst);

Complex dualize(const Complex& c);
std::string dual_label(const std::string& a);

// Reduction: cancel unit differential entries. to_reduced/from_reduced are chain homotopy
// equivalences with from∘to + id = d h + h d and to∘from = id.
struct Reduction {
    ComplexPtr reduced;
    GMap to_reduced;    // C -> reduced
    GMap from_reduced;  // reduced -> C
    GMap homotopy;      // h : C -> C, shift (1,1)
};

Reduction reduce(const Complex& c);

}  // namespace kfc
