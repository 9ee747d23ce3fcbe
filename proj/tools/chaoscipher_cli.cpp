#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chaoscipher/chaoscipher.hpp"

namespace {

using namespace chaoscipher;

Channel parse_channel(const std::string& name) {
  if (name == "r") return Channel::red;
  if (name == "g") return Channel::green;
  if (name == "b") return Channel::blue;
  throw std::runtime_error("channel must be one of r, g, b");
}

std::vector<std::uint8_t> read_raw_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open file");
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in),
                                   std::istreambuf_iterator<char>());
}

void print_battery(const BatteryReport& rep) {
  for (const TestResult& r : rep.results) {
    std::cout << r.test_name << ": " << (r.pass ? "pass" : "fail");
    if (r.status != TestStatus::ok) std::cout << " (" << to_string(r.status) << ')';
    for (double p : r.p_values) std::cout << " P=" << p;
    std::cout << '\n';
  }
}

struct SizeArgs {
  int width = 0;
  int height = 0;
};

void add_size_options(CLI::App& cmd, SizeArgs& size) {
  cmd.add_option("--width", size.width, "image width")->required();
  cmd.add_option("--height", size.height, "image height")->required();
}

void add_test_param_options(CLI::App& cmd, TestParams& params) {
  cmd.add_option("--block-frequency-m", params.block_frequency_m,
                 "block frequency block length");
  cmd.add_option("--serial-m", params.serial_m, "serial test block length");
  cmd.add_option("--apen-m", params.apen_m,
                 "approximate entropy block length");
  cmd.add_option("--template-b", params.template_pattern,
                 "non-overlapping template bit pattern");
  cmd.add_option("--template-blocks", params.template_blocks,
                 "non-overlapping template block count");
  cmd.add_option("--alpha", params.alpha, "significance level");
}

int run(int argc, char** argv) {
  CLI::App app{"chaotic substitution-diffusion image cipher toolkit"};
  app.require_subcommand(1);

  std::string key_path;
  std::string in_path;
  std::string out_path;
  std::string equiv_path;
  std::string report_path;
  std::string out_prefix;
  std::string channel_name = "b";
  SizeArgs size;
  TestParams params;
  std::uint64_t bits = 0;
  std::uint64_t seed = 0;
  int count = 0;
  int row = 0;
  int col = 0;
  int bit = 0;

  CLI::App* encrypt_cmd = app.add_subcommand("encrypt", "encrypt a P6 pixmap");
  encrypt_cmd->add_option("--key", key_path, "key file")->required();
  encrypt_cmd->add_option("--in", in_path, "input pixmap")->required();
  encrypt_cmd->add_option("--out", out_path, "output pixmap")->required();

  CLI::App* decrypt_cmd = app.add_subcommand("decrypt", "decrypt a P6 pixmap");
  decrypt_cmd->add_option("--key", key_path, "key file")->required();
  decrypt_cmd->add_option("--in", in_path, "input pixmap")->required();
  decrypt_cmd->add_option("--out", out_path, "output pixmap")->required();

  CLI::App* derive_cmd = app.add_subcommand(
      "derive-key",
      "derive the equivalent key: the encryption of an all-zero image");
  derive_cmd->add_option("--key", key_path, "key file")->required();
  add_size_options(*derive_cmd, size);
  derive_cmd->add_option("--out", out_path, "output pixmap")->required();

  CLI::App* recover_cmd = app.add_subcommand(
      "recover", "recover a plaintext using an equivalent key (no secret key)");
  recover_cmd->add_option("--equiv", equiv_path, "equivalent-key pixmap")
      ->required();
  recover_cmd->add_option("--in", in_path, "ciphertext pixmap")->required();
  recover_cmd->add_option("--out", out_path, "output pixmap")->required();

  CLI::App* keystream_cmd = app.add_subcommand(
      "keystream", "write one keystream channel as raw bytes plus a .len sidecar");
  keystream_cmd->add_option("--key", key_path, "key file")->required();
  add_size_options(*keystream_cmd, size);
  keystream_cmd->add_option("--channel", channel_name, "channel: r, g or b");
  keystream_cmd->add_option("--out", out_path, "output raw file")->required();

  CLI::App* nist_cmd =
      app.add_subcommand("nist", "run the statistical battery on a raw bit file");
  nist_cmd->add_option("--in", in_path, "raw byte file")->required();
  nist_cmd->add_option("--bits", bits, "number of bits to test")->required();
  nist_cmd->add_option("--report", report_path, "JSON report path")->required();
  add_test_param_options(*nist_cmd, params);

  CLI::App* batch_cmd = app.add_subcommand(
      "batch-nist", "battery pass counts over sequences from random keys");
  batch_cmd->add_option("--count", count, "number of sequences")->required();
  add_size_options(*batch_cmd, size);
  batch_cmd->add_option("--seed", seed, "master seed")->required();
  batch_cmd->add_option("--report", report_path, "JSON report path")->required();
  add_test_param_options(*batch_cmd, params);

  CLI::App* avalanche_cmd = app.add_subcommand(
      "avalanche", "flip one plaintext bit and map the ciphertext changes");
  avalanche_cmd->add_option("--key", key_path, "key file")->required();
  avalanche_cmd->add_option("--in", in_path, "input pixmap")->required();
  avalanche_cmd->add_option("--channel", channel_name, "channel: r, g or b");
  avalanche_cmd->add_option("--row", row, "pixel row")->required();
  avalanche_cmd->add_option("--col", col, "pixel column")->required();
  avalanche_cmd->add_option("--bit", bit, "bit index, 0 = least significant")
      ->required();
  avalanche_cmd->add_option("--out-prefix", out_prefix,
                            "prefix for the three P5 maps and the JSON report")
      ->required();

  CLI11_PARSE(app, argc, argv);

  if (encrypt_cmd->parsed()) {
    write_ppm(encrypt(read_ppm(in_path), read_key_file(key_path)), out_path);
  } else if (decrypt_cmd->parsed()) {
    write_ppm(decrypt(read_ppm(in_path), read_key_file(key_path)), out_path);
  } else if (derive_cmd->parsed()) {
    const SecretKey key = read_key_file(key_path);
    const EquivalentKey equiv = build_equivalent_key(
        [&](const RgbImage& img) { return encrypt(img, key); }, size.height,
        size.width);
    write_ppm(equiv.image, out_path);
  } else if (recover_cmd->parsed()) {
    const EquivalentKey equiv{read_ppm(equiv_path)};
    write_ppm(recover(read_ppm(in_path), equiv), out_path);
  } else if (keystream_cmd->parsed()) {
    const BitSequence s = extract_prns(read_key_file(key_path), size.height,
                                       size.width, parse_channel(channel_name));
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error(out_path + ": cannot open for writing");
    out.write(reinterpret_cast<const char*>(s.bytes.data()),
              static_cast<std::streamsize>(s.bytes.size()));
    if (!out) throw std::runtime_error(out_path + ": write failed");
    std::ofstream len(out_path + ".len");
    len << s.n << '\n';
    if (!len) throw std::runtime_error(out_path + ".len: write failed");
  } else if (nist_cmd->parsed()) {
    std::vector<std::uint8_t> bytes = read_raw_file(in_path);
    if (bits > bytes.size() * 8) {
      throw std::runtime_error(in_path + ": file holds fewer bits than --bits");
    }
    const BatteryReport rep =
        run_battery(BitSequence(std::move(bytes), bits), params);
    write_json_report(to_json(rep), report_path);
    print_battery(rep);
  } else if (batch_cmd->parsed()) {
    const BatteryReport rep =
        batch_experiment(count, size.height, size.width, seed, params);
    write_json_report(to_json(rep), report_path);
    for (const auto& [name, passes] : rep.pass_counts) {
      std::cout << name << ": " << passes << '/' << rep.sequence_count << '\n';
    }
  } else if (avalanche_cmd->parsed()) {
    const BitLocation loc{parse_channel(channel_name), row, col, bit};
    const DiffReport rep =
        avalanche_experiment(read_ppm(in_path), read_key_file(key_path), loc);
    const char* suffixes[3] = {"_r.pgm", "_g.pgm", "_b.pgm"};
    for (int c = 0; c < 3; ++c) {
      write_pgm(rep.changed_maps[static_cast<std::size_t>(c)], rep.height,
                rep.width, out_prefix + suffixes[c]);
    }
    write_json_report(to_json(rep), out_prefix + "_report.json");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
