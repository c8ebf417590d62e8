#include "ringdiag/category.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "ringdiag/error.hpp"

namespace ringdiag {

FiniteCategory FiniteCategory::make(std::vector<std::string> objects,
                                    const std::vector<std::pair<std::string, std::string>>& arrows, Closure mode) {
  FiniteCategory c;
  std::sort(objects.begin(), objects.end());
  if (std::adjacent_find(objects.begin(), objects.end()) != objects.end()) {
    throw Error(ErrorCode::UnknownObject, "object listed twice: " + *std::adjacent_find(objects.begin(), objects.end()));
  }
  c.objects_ = std::move(objects);
  for (std::size_t i = 0; i < c.objects_.size(); ++i) c.index_[c.objects_[i]] = i;
  const std::size_t n = c.objects_.size();
  c.hom_.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) c.hom_[i][i] = true;

  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& [s, t] : arrows) {
    std::size_t i = c.index(s);
    std::size_t j = c.index(t);
    if (i == j) throw Error(ErrorCode::NonIdentityEndomorphism, "arrow " + s + " -> " + s);
    if (!seen.insert({i, j}).second) {
      throw Error(ErrorCode::ParallelMorphisms, "two arrows " + s + " -> " + t);
    }
    c.hom_[i][j] = true;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (c.hom_[i][j] && c.hom_[j][i]) {
        throw Error(ErrorCode::NonIdentityEndomorphism,
                    "arrows both ways between " + c.objects_[i] + " and " + c.objects_[j]);
      }

  if (mode == Closure::Validate) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (c.hom_[i][j] && c.hom_[j][k] && !c.hom_[i][k]) {
            throw Error(ErrorCode::MissingComposite, c.objects_[i] + " -> " + c.objects_[j] + " -> " +
                                                         c.objects_[k] + " has no composite " + c.objects_[i] +
                                                         " -> " + c.objects_[k]);
          }
    return c;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (c.hom_[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (c.hom_[k][j]) c.hom_[i][j] = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (c.hom_[i][j] && c.hom_[j][i]) {
        throw Error(ErrorCode::NonIdentityEndomorphism,
                    "generated composites form a cycle through " + c.objects_[i] + " and " + c.objects_[j]);
      }
  return c;
}

std::size_t FiniteCategory::index(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw Error(ErrorCode::UnknownObject, "no object '" + id + "'");
  return it->second;
}

bool FiniteCategory::hom(const std::string& s, const std::string& t) const { return hom_[index(s)][index(t)]; }

std::vector<std::pair<std::string, std::string>> FiniteCategory::arrows() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      if (i != j && hom_[i][j]) out.emplace_back(objects_[i], objects_[j]);
  return out;
}

std::vector<std::string> FiniteCategory::arrows_into(const std::string& t) const {
  std::size_t j = index(t);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (i != j && hom_[i][j]) out.push_back(objects_[i]);
  return out;
}

std::vector<std::string> FiniteCategory::arrows_out_of(const std::string& s) const {
  std::size_t i = index(s);
  std::vector<std::string> out;
  for (std::size_t j = 0; j < size(); ++j)
    if (i != j && hom_[i][j]) out.push_back(objects_[j]);
  return out;
}

std::vector<std::pair<std::string, std::string>> FiniteCategory::generating_arrows() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) {
      if (i == j || !hom_[i][j]) continue;
      bool composite = false;
      for (std::size_t k = 0; k < size() && !composite; ++k)
        composite = k != i && k != j && hom_[i][k] && hom_[k][j];
      if (!composite) out.emplace_back(objects_[i], objects_[j]);
    }
  return out;
}

FiniteCategory FiniteCategory::full_subcategory(const std::vector<std::string>& ids) const {
  std::vector<std::pair<std::string, std::string>> arr;
  for (const auto& s : ids)
    for (const auto& t : ids)
      if (s != t && hom(s, t)) arr.emplace_back(s, t);
  return make(ids, arr, Closure::Validate);
}

FiniteCategory FiniteCategory::opposite() const {
  std::vector<std::pair<std::string, std::string>> arr;
  for (const auto& [s, t] : arrows()) arr.emplace_back(t, s);
  return make(objects_, arr, Closure::Validate);
}

std::string FiniteCategory::to_string() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < size(); ++i) os << (i ? ", " : "") << objects_[i];
  os << " |";
  bool first = true;
  for (const auto& [s, t] : generating_arrows()) {
    os << (first ? " " : ", ") << s << "->" << t;
    first = false;
  }
  os << "}";
  return os.str();
}

LinearExtension linear_extension(const FiniteCategory& cat, Direction direction) {
  const std::size_t n = cat.size();
  // pending[i] counts arrows that must be numbered before object i
  std::vector<std::size_t> pending(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && cat.hom(i, j)) ++pending[direction == Direction::Direct ? j : i];
  std::set<std::size_t> ready;  // indices follow lexicographic id order
  for (std::size_t i = 0; i < n; ++i)
    if (pending[i] == 0) ready.insert(i);
  LinearExtension out;
  out.direction = direction;
  int next = 0;
  while (!ready.empty()) {
    std::size_t i = *ready.begin();
    ready.erase(ready.begin());
    out.degree[cat.objects()[i]] = next++;
    out.order.push_back(cat.objects()[i]);
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      bool edge = direction == Direction::Direct ? cat.hom(i, j) : cat.hom(j, i);
      if (edge && --pending[j] == 0) ready.insert(j);
    }
  }
  if (out.order.size() != n) throw Error(ErrorCode::CycleDetected, "no linear extension of " + cat.to_string());
  return out;
}

bool is_valid_extension(const FiniteCategory& cat, const LinearExtension& ext) {
  for (const auto& [s, t] : cat.arrows()) {
    auto ds = ext.degree.find(s);
    auto dt = ext.degree.find(t);
    if (ds == ext.degree.end() || dt == ext.degree.end()) return false;
    bool rising = ds->second < dt->second;
    if (rising != (ext.direction == Direction::Direct)) return false;
  }
  return ext.degree.size() == cat.size();
}

std::string arrow_id(const std::string& s, const std::string& t) { return s + "->" + t; }

namespace {

// Index category on arrows between `fixed` and each of `others`; `forward`
// says whether (x) -> (y) needs x -> y or y -> x in `ordering`.
ArrowCategory arrow_category(const FiniteCategory& ordering, const std::vector<std::string>& others,
                             const std::string& fixed, bool into_fixed, bool forward) {
  ArrowCategory out;
  std::vector<std::string> ids;
  std::map<std::string, std::string> id_of;
  for (const auto& o : others) {
    std::string id = into_fixed ? arrow_id(o, fixed) : arrow_id(fixed, o);
    ids.push_back(id);
    id_of[o] = id;
    out.ends[id] = o;
  }
  std::vector<std::pair<std::string, std::string>> arr;
  for (const auto& x : others)
    for (const auto& y : others) {
      if (x == y) continue;
      bool h = forward ? ordering.hom(x, y) : ordering.hom(y, x);
      if (h) arr.emplace_back(id_of[x], id_of[y]);
    }
  out.category = FiniteCategory::make(ids, arr, FiniteCategory::Closure::Validate);
  return out;
}

}  // namespace

ArrowCategory latching_index(const FiniteCategory& cat, const std::string& t) {
  return arrow_category(cat, cat.arrows_into(t), t, true, true);
}

ArrowCategory matching_index(const FiniteCategory& cat, const std::string& s) {
  return arrow_category(cat, cat.arrows_out_of(s), s, false, true);
}

Inclusion::Inclusion(FiniteCategory sub, FiniteCategory ambient) : sub_(std::move(sub)), ambient_(std::move(ambient)) {
  for (const auto& s : sub_.objects()) {
    if (!ambient_.has_object(s)) throw Error(ErrorCode::UnknownObject, "'" + s + "' is not in the ambient category");
  }
  for (const auto& s : sub_.objects())
    for (const auto& t : sub_.objects())
      if (sub_.hom(s, t) != ambient_.hom(s, t)) {
        throw Error(ErrorCode::UnknownObject, "inclusion is not full at " + s + " -> " + t);
      }
}

Inclusion Inclusion::full(const FiniteCategory& ambient, const std::vector<std::string>& ids) {
  return Inclusion(ambient.full_subcategory(ids), ambient);
}

ArrowCategory slice(const Inclusion& incl, const std::string& t) {
  const FiniteCategory& e = incl.ambient();
  e.index(t);
  std::vector<std::string> srcs;
  for (const auto& s : incl.sub().objects())
    if (e.hom(s, t)) srcs.push_back(s);
  return arrow_category(e, srcs, t, true, true);
}

ArrowCategory coslice(const Inclusion& incl, const std::string& t) {
  const FiniteCategory& e = incl.ambient();
  e.index(t);
  std::vector<std::string> tgts;
  for (const auto& s : incl.sub().objects())
    if (e.hom(t, s)) tgts.push_back(s);
  return arrow_category(e, tgts, t, false, true);
}

std::optional<std::string> terminal_object(const FiniteCategory& cat) {
  for (const auto& t : cat.objects()) {
    bool all = true;
    for (const auto& s : cat.objects()) all = all && cat.hom(s, t);
    if (all) return t;
  }
  return std::nullopt;
}

std::optional<std::string> initial_object(const FiniteCategory& cat) {
  for (const auto& s : cat.objects()) {
    bool all = true;
    for (const auto& t : cat.objects()) all = all && cat.hom(s, t);
    if (all) return s;
  }
  return std::nullopt;
}

Augmented add_initial(const FiniteCategory& cat) {
  std::string z = "z";
  for (int k = 1; cat.has_object(z); ++k) z = "z_" + std::to_string(k);
  std::vector<std::string> objs = cat.objects();
  objs.push_back(z);
  auto arr = cat.arrows();
  for (const auto& s : cat.objects()) arr.emplace_back(z, s);
  return {FiniteCategory::make(objs, arr, FiniteCategory::Closure::Validate), z};
}

std::vector<std::vector<std::string>> chains(const FiniteCategory& cat, std::size_t k) {
  std::vector<std::vector<std::string>> cur;
  for (const auto& s : cat.objects()) cur.push_back({s});
  for (std::size_t step = 0; step < k; ++step) {
    std::vector<std::vector<std::string>> next;
    for (const auto& c : cur)
      for (const auto& t : cat.arrows_out_of(c.back())) {
        auto d = c;
        d.push_back(t);
        next.push_back(std::move(d));
      }
    cur = std::move(next);
  }
  return cur;
}

std::size_t longest_chain(const FiniteCategory& cat) {
  if (cat.size() == 0) return 0;
  std::size_t k = 0;
  while (!chains(cat, k + 1).empty()) ++k;
  return k;
}

}  // namespace ringdiag
