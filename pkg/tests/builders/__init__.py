"""Independent encoders for test fixtures (DEX, binary XML, APK containers)."""
