#include "sbc/corpus.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>

#include "sbc/error.hpp"

namespace sbc {

std::size_t Corpus::total_bits() const noexcept {
  std::size_t total = 0;
  for (const auto& s : sequences) total += s.size();
  return total;
}

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}

  std::size_t offset() const { return pos_; }
  std::size_t remaining() const { return data_.size() - pos_; }

  std::span<const std::uint8_t> take(std::size_t n, const char* what) {
    if (remaining() < n) throw FormatError(std::string("truncated ") + what, pos_);
    auto s = data_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

  std::uint32_t u32(const char* what) {
    auto b = take(4, what);
    return std::uint32_t{b[0]} | std::uint32_t{b[1]} << 8 | std::uint32_t{b[2]} << 16 |
           std::uint32_t{b[3]} << 24;
  }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> serialize_corpus(const Corpus& corpus) {
  if (corpus.sequences.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw ValidationError("corpus has too many sequences for the SBC1 format");
  }
  if (corpus.label.size() > 255) throw ValidationError("corpus label longer than 255 bytes");

  std::size_t total = 4 + 4 + 1 + corpus.label.size();
  for (const auto& s : corpus.sequences) total += 4 + s.bytes().size();

  std::vector<std::uint8_t> out;
  out.reserve(total);
  out.insert(out.end(), std::begin(kCorpusMagic), std::end(kCorpusMagic));
  put_u32(out, static_cast<std::uint32_t>(corpus.sequences.size()));
  for (const auto& s : corpus.sequences) {
    if (s.size() > std::numeric_limits<std::uint32_t>::max()) {
      throw ValidationError("sequence too long for the SBC1 format");
    }
    put_u32(out, static_cast<std::uint32_t>(s.size()));
    out.insert(out.end(), s.bytes().begin(), s.bytes().end());
  }
  out.push_back(static_cast<std::uint8_t>(corpus.label.size()));
  out.insert(out.end(), corpus.label.begin(), corpus.label.end());
  return out;
}

Corpus parse_corpus(std::span<const std::uint8_t> data) {
  Reader r(data);
  if (data.size() < 4 || std::memcmp(data.data(), kCorpusMagic, 4) != 0) {
    throw FormatError("bad magic, expected SBC1", 0);
  }
  r.take(4, "magic");
  const std::uint32_t count = r.u32("record count");

  Corpus corpus;
  // Each record is at least 5 bytes; avoid reserving for a hostile count.
  corpus.sequences.reserve(std::min<std::size_t>(count, r.remaining() / 5));
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::size_t record_start = r.offset();
    const std::uint32_t bits = r.u32("record length");
    if (bits == 0) throw FormatError("record " + std::to_string(i) + " has zero length", record_start);
    const std::size_t payload_start = r.offset();
    auto payload = r.take((std::size_t{bits} + 7) / 8, "record payload");
    try {
      corpus.sequences.emplace_back(std::vector<std::uint8_t>(payload.begin(), payload.end()), bits);
    } catch (const ValidationError& e) {
      throw FormatError("record " + std::to_string(i) + ": " + e.what(),
                        payload_start + payload.size() - 1);
    }
  }
  const std::uint8_t label_len = r.take(1, "label length")[0];
  auto label = r.take(label_len, "label");
  corpus.label.assign(label.begin(), label.end());
  if (r.remaining() != 0) throw FormatError("trailing bytes after corpus", r.offset());
  return corpus;
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
  const auto bytes = serialize_corpus(corpus);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("failed writing corpus stream");
}

Corpus read_corpus(std::istream& in) {
  std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_corpus(bytes);
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "' for reading");
  in.seekg(0, std::ios::end);
  const auto size = static_cast<std::size_t>(in.tellg());
  in.seekg(0);
  std::vector<std::uint8_t> bytes(size);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(size));
  if (!in) throw Error("failed reading '" + path.string() + "'");
  return bytes;
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

void save_corpus(const std::filesystem::path& path, const Corpus& corpus) {
  write_file_bytes(path, serialize_corpus(corpus));
}

Corpus load_corpus(const std::filesystem::path& path) { return parse_corpus(read_file_bytes(path)); }

Corpus load_raw_sequence(const std::filesystem::path& path) {
  auto bytes = read_file_bytes(path);
  if (bytes.empty()) throw ValidationError("raw input '" + path.string() + "' is empty");
  const std::size_t bits = bytes.size() * 8;
  Corpus corpus;
  corpus.label = "raw";
  corpus.sequences.emplace_back(std::move(bytes), bits);
  return corpus;
}

}  // namespace sbc
