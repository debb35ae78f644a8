from apkwarden.common.strings.splitters import (
    csv_to_list,
    read_list_file,
    split_identifier,
    split_words,
)

__all__ = ["csv_to_list", "read_list_file", "split_identifier", "split_words"]
