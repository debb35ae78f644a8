from apkwarden.common.naming.slugger import report_file_name, slugify

__all__ = ["slugify", "report_file_name"]
