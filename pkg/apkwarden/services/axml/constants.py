# apkwarden/services/axml/constants.py
from __future__ import annotations

# chunk types
RES_STRING_POOL_TYPE = 0x0001
RES_XML_TYPE = 0x0003
RES_XML_START_NAMESPACE_TYPE = 0x0100
RES_XML_END_NAMESPACE_TYPE = 0x0101
RES_XML_START_ELEMENT_TYPE = 0x0102
RES_XML_END_ELEMENT_TYPE = 0x0103
RES_XML_CDATA_TYPE = 0x0104
RES_XML_RESOURCE_MAP_TYPE = 0x0180

UTF8_FLAG = 1 << 8
NO_INDEX = 0xFFFFFFFF

ANDROID_NS = "http://schemas.android.com/apk/res/android"

# framework attribute resource ids (android.R.attr)
ATTR_NAME = 0x01010003
ATTR_PERMISSION = 0x01010006
ATTR_DEBUGGABLE = 0x0101000F
ATTR_EXPORTED = 0x01010010
ATTR_LAUNCH_MODE = 0x0101001D
ATTR_ID = 0x010100D0
ATTR_TEXT = 0x0101014F
ATTR_HINT = 0x01010150
ATTR_MIN_SDK = 0x0101020C
ATTR_TARGET_SDK = 0x01010270
ATTR_ALLOW_BACKUP = 0x0101027F
ATTR_USES_CLEARTEXT = 0x010104EC
ATTR_NETWORK_SECURITY_CONFIG = 0x01010527
