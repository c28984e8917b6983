// lgpspoof/frontend.cc

// Copyright 2026  The lgpspoof Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "lgpspoof/frontend.h"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>
#include <numbers>

#include "lgpspoof/base.h"
#include "lgpspoof/binary_io.h"
#include "lgpspoof/tensor_archive.h"

namespace lgpspoof {

// ------------------------------------------------------------------- WAV

Waveform ReadWav(const std::string &path) {
  const std::string bytes = ReadFileBytes(path);
  ByteReader r(bytes);
  char tag[4];
  r.Raw(tag, 4);
  if (std::memcmp(tag, "RIFF", 4) != 0) throw FormatError("wav: not RIFF", 0);
  r.U32();
  r.Raw(tag, 4);
  if (std::memcmp(tag, "WAVE", 4) != 0) throw FormatError("wav: not WAVE", 8);

  Waveform wave;
  bool have_fmt = false;
  while (true) {
    const std::size_t chunk_at = r.Offset();
    r.Raw(tag, 4);
    const std::uint32_t size = r.U32();
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      const std::uint16_t format = r.U16();
      const std::uint16_t channels = r.U16();
      const std::uint32_t rate = r.U32();
      r.U32();  // byte rate
      r.U16();  // block align
      const std::uint16_t bits = r.U16();
      if (format != 1 || channels != 1 || bits != 16)
        throw FormatError("wav: only 16-bit PCM mono is supported", chunk_at);
      if (rate == 0) throw FormatError("wav: zero sample rate", chunk_at);
      wave.sample_rate = rate;
      if (size > 16) r.Take(size - 16);
      have_fmt = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      if (!have_fmt) throw FormatError("wav: data before fmt chunk", chunk_at);
      const std::size_t count = size / 2;
      wave.samples.resize(count);
      for (auto &s : wave.samples)
        s = static_cast<std::int16_t>(r.U16()) / 32768.0;
      return wave;
    } else {
      r.Take(size + (size & 1));
    }
  }
}

void WriteWav(const std::string &path, const Waveform &wave) {
  ByteWriter w;
  const std::uint32_t data_bytes =
      static_cast<std::uint32_t>(wave.samples.size() * 2);
  const auto rate = static_cast<std::uint32_t>(wave.sample_rate);
  w.Raw("RIFF", 4);
  w.U32(36 + data_bytes);
  w.Raw("WAVE", 4);
  w.Raw("fmt ", 4);
  w.U32(16);
  w.U16(1);
  w.U16(1);
  w.U32(rate);
  w.U32(rate * 2);
  w.U16(2);
  w.U16(16);
  w.Raw("data", 4);
  w.U32(data_bytes);
  for (double s : wave.samples) {
    const double clipped = std::clamp(s, -1.0, 32767.0 / 32768.0);
    w.U16(static_cast<std::uint16_t>(
        static_cast<std::int16_t>(std::lround(clipped * 32768.0))));
  }
  WriteFileBytes(path, w.Take());
}

// ------------------------------------------------------------------ LFCC

void LfccConfig::Validate(double sample_rate) const {
  if (!(sample_rate > 0.0)) throw InvalidArgument("lfcc: bad sample rate");
  if (!(window_ms > 0.0) || !(hop_ms > 0.0) || hop_ms > window_ms)
    throw InvalidArgument("lfcc: need 0 < hop <= window");
  if (num_filters == 0 || num_ceps == 0 || num_ceps > num_filters)
    throw InvalidArgument("lfcc: need 1 <= num_ceps <= num_filters");
  if (WindowSamples(sample_rate) > fft_size)
    throw InvalidArgument("lfcc: window longer than fft size");
  if (include_deltas && delta_window == 0)
    throw InvalidArgument("lfcc: delta window must be >= 1");
}

std::size_t LfccConfig::WindowSamples(double sample_rate) const {
  return static_cast<std::size_t>(std::lround(window_ms * sample_rate / 1000.0));
}

std::size_t LfccConfig::HopSamples(double sample_rate) const {
  return std::max<std::size_t>(
      1, static_cast<std::size_t>(std::lround(hop_ms * sample_rate / 1000.0)));
}

Tensor LinearFilterbank(const LfccConfig &cfg, double sample_rate) {
  const std::size_t bins = cfg.fft_size / 2 + 1;
  const std::size_t nf = cfg.num_filters;
  const double nyquist = sample_rate / 2.0;
  const double spacing = nyquist / static_cast<double>(nf + 1);
  Tensor fb({nf, bins});
  for (std::size_t k = 0; k < nf; ++k) {
    const double lo = spacing * k, centre = spacing * (k + 1),
                 hi = spacing * (k + 2);
    for (std::size_t b = 0; b < bins; ++b) {
      const double f = b * sample_rate / cfg.fft_size;
      double w = 0.0;
      if (f > lo && f <= centre)
        w = (f - lo) / (centre - lo);
      else if (f > centre && f < hi)
        w = (hi - f) / (hi - centre);
      fb.At(k, b) = w;
    }
  }
  return fb;
}

namespace {

std::mutex fftw_plan_mutex;

class RealFft {
 public:
  explicit RealFft(std::size_t n) : n_(n) {
    in_ = fftw_alloc_real(n);
    out_ = fftw_alloc_complex(n / 2 + 1);
    std::lock_guard<std::mutex> lock(fftw_plan_mutex);
    plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), in_, out_, FFTW_ESTIMATE);
  }
  ~RealFft() {
    {
      std::lock_guard<std::mutex> lock(fftw_plan_mutex);
      fftw_destroy_plan(plan_);
    }
    fftw_free(in_);
    fftw_free(out_);
  }
  RealFft(const RealFft &) = delete;
  RealFft &operator=(const RealFft &) = delete;

  double *Input() { return in_; }
  void PowerSpectrum(std::vector<double> *power) {
    fftw_execute(plan_);
    power->resize(n_ / 2 + 1);
    for (std::size_t b = 0; b <= n_ / 2; ++b)
      (*power)[b] = out_[b][0] * out_[b][0] + out_[b][1] * out_[b][1];
  }

 private:
  std::size_t n_;
  double *in_;
  fftw_complex *out_;
  fftw_plan plan_;
};

}  // namespace

FeatureMatrix ComputeDeltas(const FeatureMatrix &feats, std::size_t window) {
  const std::size_t frames = feats.NumFrames(), dim = feats.Dim();
  FeatureMatrix out(frames, dim);
  if (frames == 0) return out;
  double norm = 0.0;
  for (std::size_t n = 1; n <= window; ++n) norm += 2.0 * n * n;
  for (std::size_t t = 0; t < frames; ++t) {
    for (std::size_t n = 1; n <= window; ++n) {
      const std::size_t ahead = std::min(frames - 1, t + n);
      const std::size_t behind = t >= n ? t - n : 0;
      for (std::size_t d = 0; d < dim; ++d)
        out(t, d) += n * (feats(ahead, d) - feats(behind, d));
    }
    for (std::size_t d = 0; d < dim; ++d) out(t, d) /= norm;
  }
  return out;
}

FeatureMatrix ExtractLfcc(const Waveform &wave, const LfccConfig &cfg) {
  cfg.Validate(wave.sample_rate);
  const std::size_t win = cfg.WindowSamples(wave.sample_rate);
  const std::size_t hop = cfg.HopSamples(wave.sample_rate);
  if (wave.samples.size() < win)
    throw InvalidArgument("lfcc: waveform of " +
                          std::to_string(wave.samples.size()) +
                          " samples is shorter than one window (" +
                          std::to_string(win) + ")");
  const std::size_t frames = 1 + (wave.samples.size() - win) / hop;
  const std::size_t nf = cfg.num_filters, nc = cfg.num_ceps;
  const Tensor fb = LinearFilterbank(cfg, wave.sample_rate);
  const std::size_t bins = fb.Dim(1);

  std::vector<double> window(win);
  for (std::size_t i = 0; i < win; ++i)
    window[i] = win == 1 ? 1.0
                         : 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i /
                                                  (win - 1.0));
  // Orthonormal DCT-II basis, first nc rows.
  std::vector<double> dct(nc * nf);
  for (std::size_t k = 0; k < nc; ++k) {
    const double scale = std::sqrt((k == 0 ? 1.0 : 2.0) / nf);
    for (std::size_t j = 0; j < nf; ++j)
      dct[k * nf + j] =
          scale * std::cos(std::numbers::pi * k * (j + 0.5) / nf);
  }

  RealFft fft(cfg.fft_size);
  std::vector<double> power, log_energy(nf);
  FeatureMatrix ceps(frames, nc);
  for (std::size_t t = 0; t < frames; ++t) {
    double *in = fft.Input();
    std::fill(in, in + cfg.fft_size, 0.0);
    for (std::size_t i = 0; i < win; ++i)
      in[i] = wave.samples[t * hop + i] * window[i];
    fft.PowerSpectrum(&power);
    for (std::size_t k = 0; k < nf; ++k) {
      double e = 0.0;
      for (std::size_t b = 0; b < bins; ++b) e += fb.At(k, b) * power[b];
      log_energy[k] = std::log(e + 2.220446049250313e-16);
    }
    for (std::size_t k = 0; k < nc; ++k) {
      double c = 0.0;
      for (std::size_t j = 0; j < nf; ++j) c += dct[k * nf + j] * log_energy[j];
      ceps(t, k) = c;
    }
  }
  if (!cfg.include_deltas) return ceps;

  const FeatureMatrix delta = ComputeDeltas(ceps, cfg.delta_window);
  const FeatureMatrix delta2 = ComputeDeltas(delta, cfg.delta_window);
  FeatureMatrix out(frames, 3 * nc);
  for (std::size_t t = 0; t < frames; ++t)
    for (std::size_t k = 0; k < nc; ++k) {
      out(t, k) = ceps(t, k);
      out(t, nc + k) = delta(t, k);
      out(t, 2 * nc + k) = delta2(t, k);
    }
  return out;
}

// --------------------------------------------------------- Feature files

std::string SerializeFeatures(const FeatureMatrix &feats) {
  ByteWriter w;
  w.Raw("LGPF", 4);
  w.U16(kFeatureFormatVersion);
  w.U32(static_cast<std::uint32_t>(feats.NumFrames()));
  w.U32(static_cast<std::uint32_t>(feats.Dim()));
  for (double v : feats.Data()) w.F32(static_cast<float>(v));
  return w.Take();
}

FeatureMatrix DeserializeFeatures(std::string_view bytes) {
  ByteReader r(bytes);
  char magic[4];
  r.Raw(magic, 4);
  if (std::memcmp(magic, "LGPF", 4) != 0)
    throw FormatError("feature file: bad magic", 0);
  const std::uint16_t version = r.U16();
  if (version != kFeatureFormatVersion)
    throw FormatError("feature file: unsupported version " +
                          std::to_string(version), 4);
  const std::uint32_t rows = r.U32();
  const std::uint32_t cols = r.U32();
  const std::uint64_t count = static_cast<std::uint64_t>(rows) * cols;
  if (bytes.size() - r.Offset() != count * 4)
    throw FormatError("feature file: expected " + std::to_string(count * 4) +
                          " value bytes, found " +
                          std::to_string(bytes.size() - r.Offset()),
                      r.Offset());
  std::vector<double> data(count);
  for (auto &v : data) v = r.F32();
  return FeatureMatrix(rows, cols, std::move(data));
}

void StoreFeatures(const std::string &path, const FeatureMatrix &feats) {
  WriteFileBytes(path, SerializeFeatures(feats));
}

FeatureMatrix LoadFeatures(const std::string &path) {
  return DeserializeFeatures(ReadFileBytes(path));
}

FeatureMatrix FixLength(const FeatureMatrix &feats, std::size_t target) {
  if (feats.Empty()) throw InvalidArgument("fix length: empty utterance");
  if (target == 0) throw InvalidArgument("fix length: target must be >= 1");
  FeatureMatrix out(target, feats.Dim());
  for (std::size_t t = 0; t < target; ++t) {
    auto src = feats.Row(t % feats.NumFrames());
    std::copy(src.begin(), src.end(), out.Row(t).begin());
  }
  return out;
}

}  // namespace lgpspoof
