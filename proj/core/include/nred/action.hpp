#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace nred {

enum class ActionKind { plain, acquire, release, syncpoint, block };

/// An edge label. Plain actions and block symbols are identified by name;
/// lock actions carry the lock they operate on; the sync-point is unique.
struct Action {
  ActionKind kind = ActionKind::plain;
  std::string name;  // plain / block symbol
  std::string lock;  // acquire / release

  static Action plain(std::string n) { return {ActionKind::plain, std::move(n), {}}; }
  static Action block(std::string n) { return {ActionKind::block, std::move(n), {}}; }
  static Action acquire(std::string m) { return {ActionKind::acquire, {}, std::move(m)}; }
  static Action release(std::string m) { return {ActionKind::release, {}, std::move(m)}; }
  static Action syncpoint() { return {ActionKind::syncpoint, {}, {}}; }

  /// Plain actions and block symbols; the only labels a commutativity
  /// relation may talk about.
  bool is_named() const {
    return kind == ActionKind::plain || kind == ActionKind::block;
  }
  bool is_lock() const {
    return kind == ActionKind::acquire || kind == ActionKind::release;
  }
  bool is_sync() const { return is_lock() || kind == ActionKind::syncpoint; }

  /// Printable label: `a`, `acq(m)`, `rel(m)` or the bullet.
  std::string label() const;

  friend bool operator==(const Action&, const Action&) = default;
  friend auto operator<=>(const Action&, const Action&) = default;
};

inline constexpr std::string_view kSyncLabel = "\xE2\x80\xA2";  // U+2022

}  // namespace nred
