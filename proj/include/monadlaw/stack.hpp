#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "monadlaw/finite.hpp"
#include "monadlaw/monoid.hpp"

namespace monadlaw {

enum class EffectKind { None, Exception, Reader, Writer, State };

std::string_view effect_name(EffectKind k);
std::optional<EffectKind> parse_effect(std::string_view s);

struct Layer {
  enum class Kind { ExceptT, ReaderT, WriterT, StateT };
  Kind kind;
  FinType param;  // error, environment or state type; the monoid carrier for WriterT
  const MonoidSpec* monoid = nullptr;

  static Layer except(FinType e) { return {Kind::ExceptT, std::move(e), nullptr}; }
  static Layer reader(FinType r) { return {Kind::ReaderT, std::move(r), nullptr}; }
  static Layer writer(const MonoidSpec& m) { return {Kind::WriterT, m.carrier(), &m}; }
  static Layer state(FinType s) { return {Kind::StateT, std::move(s), nullptr}; }

  std::string to_string() const;
};

struct StackSpec {
  std::vector<Layer> layers;  // outermost first, over Id
  std::optional<FinType> reader_base;
  // Explicit designation: index into `layers` whose kind matches the effect.
  std::optional<std::size_t> designated;

  std::string to_string() const;
};

// Grammar:
//   stack := layer ("." layer)* "." "Id" | "Id" | "ReaderBase(r=" INT "," stack ")"
//   layer := "ExceptT(e=" INT ")" | "ReaderT(r=" INT ")" | "WriterT(" monoid ")" | "StateT(s=" INT ")"
// Errors are SyntaxError with column positions.
StackSpec parse_stack(std::string_view text);

std::string stack_grammar_help();

enum class Mutation { None, WriterBindDropsLog, PutIgnoresArg, CatchNeverHandles };

std::string_view mutation_name(Mutation m);
std::optional<Mutation> parse_mutation(std::string_view s);

// Non-owning callable reference used for function arguments of the semantic
// operations. The referenced callable must outlive the call.
class FnRef {
 public:
  template <class F, class = std::enable_if_t<!std::is_same_v<std::decay_t<F>, FnRef>>>
  FnRef(F&& f)  // NOLINT(google-explicit-constructor)
      : obj_(const_cast<void*>(static_cast<const void*>(std::addressof(f)))),
        call_([](void* o, const Value& v) -> Value {
          return (*static_cast<std::remove_reference_t<F>*>(o))(v);
        }) {}

  Value operator()(const Value& v) const { return call_(obj_, v); }

 private:
  void* obj_;
  Value (*call_)(void*, const Value&);
};

// Concrete semantics of one stack. Operations of an effect act on the
// designated layer of that kind and are lifted through the layers outside it.
class Stack {
 public:
  Stack(StackSpec spec, EffectKind effect, Mutation mutation = Mutation::None);

  const StackSpec& spec() const { return spec_; }
  EffectKind effect() const { return effect_; }
  Mutation mutation() const { return mutation_; }
  bool has_designated() const { return designated_.has_value(); }
  bool has_reader_base() const { return spec_.reader_base.has_value(); }

  // Parameter varied by the two-parameter effects: the designated error type
  // or environment type. Unit for the other effects.
  FinType param() const;
  // Same stack with the designated parameter replaced.
  Stack with_param(const FinType& p) const;
  // Stack with the reader base removed (N in the reader laws).
  Stack plain() const;

  FinType carrier(const FinType& x) const;

  Value unit(const Value& a) const;
  Value bind(FnRef k, const Value& t) const;
  Value fmap(FnRef f, const Value& t) const;

  // exception
  Value raise(const Value& e) const;
  Value catch_error(FnRef h, const Value& t) const;
  Value map_error(FnRef h, const Value& t) const;  // F(h, id)
  Value exc_rho(const Value& v) const;             // raise \/ unit
  Value handle(FnRef k, const Value& t) const;
  Value exc_mixmap(FnRef g, const Value& t) const;
  Value fusel(const Value& t) const;
  Value fuser(const Value& t) const;

  // reader
  Value rdr_rho(FnRef f) const;
  Value ask() const;
  // t is a computation over environment `from_env`; the result lives in this stack.
  Value local(FnRef h, const FinType& from_env, const Value& t) const;
  Value apply(const Value& t) const;  // table over the environment of N-values
  Value abstr(const Value& f) const;

  // writer
  Value writer(const Value& p) const;
  Value tell(const Value& w) const;
  Value listen(const Value& t) const;
  Value pass(const Value& t) const;
  Value wrt_mixmap(FnRef g, const Value& t) const;
  Value shift(const Value& t) const;
  Value fuse(const Value& t) const;
  Value hdl(FnRef k, const Value& t) const;
  Value pbnd(FnRef k, const Value& p) const;
  Value logmap(FnRef h, const Value& t) const;
  const MonoidSpec& monoid() const;

  // state
  Value get() const;
  Value put(const Value& s) const;
  Value state(FnRef f) const;
  Value modify(FnRef f) const;
  const FinType& state_type() const;

 private:
  struct Level {
    Layer::Kind kind;
    FinType param;
    const MonoidSpec* monoid;
    bool base;  // the reader base r -> Id x
    const std::vector<Value>* values;  // enumeration of param for ReaderT/StateT
  };

  std::size_t require(EffectKind k, const char* op) const;

  FinType carrier_at(std::size_t lv, const FinType& x) const;
  Value unit_at(std::size_t lv, const Value& a) const;
  Value bind_at(std::size_t lv, FnRef k, const Value& t) const;
  Value fmap_at(std::size_t lv, FnRef f, const Value& t) const;
  Value lift_to_top(std::size_t d, Value m) const;
  template <class Op>
  Value map_through(std::size_t lv, std::size_t d, const Op& op, const Value& t) const;
  Value catch_at(std::size_t lv, FnRef h, const Value& t) const;
  Value listen_at(std::size_t lv, const Value& t) const;
  Value pass_at(std::size_t lv, const Value& t) const;
  std::vector<Value> apply_at(std::size_t lv, const Value& t) const;
  Value abstr_at(std::size_t lv, const std::vector<Value>& f) const;

  StackSpec spec_;
  EffectKind effect_;
  Mutation mutation_;
  std::vector<Level> levels_;
  std::optional<std::size_t> designated_;  // level index
  Value log_identity_;                     // identity table on the designated monoid
};

}  // namespace monadlaw
