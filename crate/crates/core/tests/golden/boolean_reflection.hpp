class jjava_lang_Boolean:public jjava_lang_Object{
    public:inline static jjava_lang_Class native(JNIEnv*);
    public:inline static jfieldID TRUE(JNIEnv*,JNIEnv*);
    public:inline static jfieldID FALSE(JNIEnv*,JNIEnv*);
    public:inline static jfieldID value(JNIEnv*,JNIEnv*);
    public:inline static jfieldID serialVersionUID(JNIEnv*,
        JNIEnv*);
    public:inline static jfieldID TYPE(JNIEnv*,JNIEnv*);
    public:inline static jmethodID Boolean(JNIEnv*,JNIEnv*);
    public:inline static jmethodID Boolean_2(JNIEnv*,JNIEnv*);
    public:inline static jmethodID booleanValue(JNIEnv*,JNIEnv*);
    public:inline static jmethodID valueOf(JNIEnv*,JNIEnv*);
    public:inline static jmethodID toString(JNIEnv*,JNIEnv*);
    public:inline static jmethodID hashCode(JNIEnv*,JNIEnv*);
    public:inline static jmethodID equals(JNIEnv*,JNIEnv*);
    public:inline static jmethodID getBoolean(JNIEnv*,JNIEnv*);
    public:inline static jmethodID toBoolean(JNIEnv*,JNIEnv*);
};
