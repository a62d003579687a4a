#pragma once

// ChaCha20 keystream test vectors from RFC 8439 (block function, keystream
// and appendix A.1/A.2 examples). Keystream bytes for the A.2 examples are
// the published ciphertext XOR plaintext.

#include <array>
#include <cstdint>

namespace rfc {

struct Vector {
  const char* name;
  const char* key;
  const char* nonce;
  std::uint32_t counter;
  const char* keystream;
};

inline constexpr std::array<Vector, 6> kVectors{{
    {"block function", "000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f",
     "000000090000004a00000000", 1,
     "10f1e7e4d13b5915500fdd1fa32071c4c7d1f4c733c068030422aa9ac3d46c4e"
     "d2826446079faa0914c2d705d98b02a2b5129cd1de164eb9cbd083e8a2503c4e"},
    {"encryption keystream", "000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f",
     "000000000000004a00000000", 1,
     "224f51f3401bd9e12fde276fb8631ded8c131f823d2c06e27e4fcaec9ef3cf78"
     "8a3b0aa372600a92b57974cded2b9334794cba40c63e34cdea212c4cf07d41b7"},
    {"zero key, counter 0", "0000000000000000000000000000000000000000000000000000000000000000",
     "000000000000000000000000", 0,
     "76b8e0ada0f13d90405d6ae55386bd28bdd219b8a08ded1aa836efcc8b770dc7"
     "da41597c5157488d7724e03fb8d84a376a43b8f41518a11cc387b669b2ee6586"},
    {"zero key, counter 1", "0000000000000000000000000000000000000000000000000000000000000000",
     "000000000000000000000000", 1,
     "9f07e7be5551387a98ba977c732d080dcb0f29a048e3656912c6533e32ee7aed"
     "29b721769ce64e43d57133b074d839d531ed1f28510afb45ace10a1f4b794d6f"},
    {"key ...01, nonce ...02", "0000000000000000000000000000000000000000000000000000000000000001",
     "000000000000000000000002", 1,
     "e295895d808f4db326441fcb51ec53042e4029f72a6f1ef8d8b90c74250d3082"
     "4ef2f0abb10b0961a096f37498bd047767fce3a228c5e3f9399211ba2bd44964"
     "2323944eea82cc9b386bd48486f02b7c00c689a97df8eec1e672416247172d16"
     "62f4940316aac760606af75b7d87353c077645076ce5e464d9126d3fe9c78829"
     "a46ef02c80ea1ca4f60fca6143b1bd0f3623a1030d8c66c13f20c49743b65de9"
     "e4ddb6ffd5e44cd87c8991d708059d41905c214287052fa7fe145ba7f7d68359"
     "6d15edcd0da91bab1bde582ebaba467bdaa350fe417553187ba7eb9c48c9e34c"
     "bf4eceeb5c14ac454353dce1b2f681f1c5db25f316f8d5ddd142869c7ddd2e65"
     "b7ef3eee053972bb012f554ced61ffa9e5c4e84ff1c01ca0984038bb38fd323f"
     "2f1ba326b1dd51830e9c7299a4bf6501cace9243acdfc0f2765990d2f4ef9587"
     "eca7b837b0dff6051356af5cd0d9aceb6dcaedeba1ca932ec0183db56390b487"
     "5ab175bbff0701db29e30f5654870e98b78ee50802864e"},
    {"jabberwocky key", "1c9240a5eb55d38af333888604f6b5f0473917c1402b80099dca5cbc207075c0",
     "000000000000000000000002", 42,
     "45b2431ee6cde5d636968b2b080b81be31d2b1646c292d007de78bc1222191a0"
     "60084ef89348aed9d5672dd46c000615dde3ac22ff09d7a370025f909e60739c"
     "92fe0138ce63588f0a580253053a32d17f275725237e8ff6f44a1a971a504912"
     "77eaa290d2b59f3938b3352602ca5491f5d4f99501aa9543011d0b1ba3edff"},
}};

inline constexpr const char* kSunscreenCiphertext =
    "6e2e359a2568f98041ba0728dd0d6981e97e7aec1d4360c20a27afccfd9fae0b"
    "f91b65c5524733ab8f593dabcd62b3571639d624e65152ab8f530c359f0861d8"
    "07ca0dbf500d6a6156a38e088a22b65e52bc514d16ccf806818ce91ab7793736"
    "5af90bbf74a35be6b40b8eedf2785e42874d";

}  // namespace rfc
