#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ringdiag {

/// A finite category with at most one morphism in each hom-set and no
/// non-identity endomorphisms, i.e. a finite poset.  Objects are string ids
/// kept in lexicographic order; every enumeration follows that order.
class FiniteCategory {
 public:
  enum class Closure {
    Generate,  // arrows are generators; composites are added
    Validate,  // arrows are the complete list; missing composites are errors
  };

  FiniteCategory() = default;
  /// Throws MissingComposite, ParallelMorphisms, NonIdentityEndomorphism,
  /// UnknownObject.
  static FiniteCategory make(std::vector<std::string> objects,
                             const std::vector<std::pair<std::string, std::string>>& arrows,
                             Closure mode = Closure::Generate);

  const std::vector<std::string>& objects() const { return objects_; }
  std::size_t size() const { return objects_.size(); }
  bool has_object(const std::string& id) const { return index_.count(id) > 0; }
  /// Throws UnknownObject.
  std::size_t index(const std::string& id) const;

  /// A morphism s -> t exists (identities included).
  bool hom(const std::string& s, const std::string& t) const;
  bool hom(std::size_t s, std::size_t t) const { return hom_[s][t]; }
  /// Non-identity arrows in lexicographic (source, target) order.
  std::vector<std::pair<std::string, std::string>> arrows() const;
  /// Sources of non-identity arrows into t; targets of those out of s.
  std::vector<std::string> arrows_into(const std::string& t) const;
  std::vector<std::string> arrows_out_of(const std::string& s) const;
  /// Arrows that are not composites of two non-identity arrows.
  std::vector<std::pair<std::string, std::string>> generating_arrows() const;

  FiniteCategory full_subcategory(const std::vector<std::string>& ids) const;
  FiniteCategory opposite() const;

  std::string to_string() const;

  friend bool operator==(const FiniteCategory&, const FiniteCategory&) = default;

 private:
  std::vector<std::string> objects_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::vector<bool>> hom_;
};

enum class Direction { Direct, Inverse };

/// Ordinal degrees of the objects: rising along non-identity arrows for a
/// direct structure, falling for an inverse one.
struct LinearExtension {
  Direction direction = Direction::Direct;
  std::map<std::string, int> degree;
  /// Objects in increasing degree.
  std::vector<std::string> order;
};

/// Topological sort with lexicographic tie-breaking; for the inverse
/// direction sinks are numbered first.  Throws CycleDetected.
LinearExtension linear_extension(const FiniteCategory& cat, Direction direction);
bool is_valid_extension(const FiniteCategory& cat, const LinearExtension& ext);

/// An index category whose objects are arrows of an ambient category.  Each
/// object is named "s->t"; `ends` gives the endpoint other than the fixed one.
struct ArrowCategory {
  FiniteCategory category;
  std::map<std::string, std::string> ends;
  std::string end(const std::string& object) const { return ends.at(object); }
};

std::string arrow_id(const std::string& s, const std::string& t);

/// Non-identity arrows into t; (s->t) -> (u->t) when s -> u.
ArrowCategory latching_index(const FiniteCategory& cat, const std::string& t);
/// Non-identity arrows out of s; (s->t) -> (s->u) when t -> u.
ArrowCategory matching_index(const FiniteCategory& cat, const std::string& s);

/// A full subcategory embedding.
class Inclusion {
 public:
  Inclusion() = default;
  /// Throws UnknownObject when sub is not a full subcategory of ambient.
  Inclusion(FiniteCategory sub, FiniteCategory ambient);
  static Inclusion full(const FiniteCategory& ambient, const std::vector<std::string>& ids);
  static Inclusion identity(const FiniteCategory& cat) { return Inclusion(cat, cat); }

  const FiniteCategory& sub() const { return sub_; }
  const FiniteCategory& ambient() const { return ambient_; }

  friend bool operator==(const Inclusion&, const Inclusion&) = default;

 private:
  FiniteCategory sub_;
  FiniteCategory ambient_;
};

/// D/t: arrows s -> t of the ambient with s in D, including id_t when t is in
/// D; (s->t) -> (u->t) when s -> u.
ArrowCategory slice(const Inclusion& incl, const std::string& t);
/// t/D: arrows t -> s with s in D; (t->s) -> (t->u) when s -> u.
ArrowCategory coslice(const Inclusion& incl, const std::string& t);
/// The terminal (resp. initial) object of an index category, if any.
std::optional<std::string> terminal_object(const FiniteCategory& cat);
std::optional<std::string> initial_object(const FiniteCategory& cat);

struct Augmented {
  FiniteCategory category;
  std::string initial;
};
/// One new object, "z" (or "z_1", "z_2", ... when taken), with an arrow to
/// every object.
Augmented add_initial(const FiniteCategory& cat);

/// Chains s_0 -> ... -> s_k of non-identity arrows, lexicographic.
std::vector<std::vector<std::string>> chains(const FiniteCategory& cat, std::size_t k);
std::size_t longest_chain(const FiniteCategory& cat);

}  // namespace ringdiag
