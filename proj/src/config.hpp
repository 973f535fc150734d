#ifndef QRC_SRC_CONFIG_HPP
#define QRC_SRC_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qrc::config {

/// Key = value run settings. Resolution order is defaults, then config
/// file, then explicit overrides; every typed getter validates on
/// access, and unknown keys are rejected against a per-command list
/// before a run starts.
class RunConfig {
public:
  void set(const std::string &key, const std::string &value);
  bool has(const std::string &key) const;

  /// Plain "key = value" lines with '#' comments, or a manifest.json
  /// produced by a previous run (its "config" object is loaded).
  void load_file(const std::string &path);

  std::string get_str(const std::string &key, const std::string &dflt) const;
  double get_double(const std::string &key, double dflt) const;
  int get_int(const std::string &key, int dflt) const;
  uint64_t get_u64(const std::string &key, uint64_t dflt) const;
  bool get_bool(const std::string &key, bool dflt) const;
  std::vector<double> get_double_list(const std::string &key,
                                      const std::vector<double> &dflt) const;
  std::vector<int> get_int_list(const std::string &key,
                                const std::vector<int> &dflt) const;
  std::vector<std::string> get_str_list(
      const std::string &key, const std::vector<std::string> &dflt) const;

  /// Rejects keys outside the allowed set (typo guard).
  void check_keys(const std::vector<std::string> &allowed,
                  const std::string &command) const;

  const std::map<std::string, std::string> &entries() const { return map_; }

private:
  std::map<std::string, std::string> map_;
};

} // namespace qrc::config

#endif
